#include "ftvgs/lssp.hpp"

#include "ftvgs/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace ftvgs {

void LsspConfig::validate() const {
  require(gamma_g >= 0 && gamma_t >= 0 && gamma_d >= 0, "regularization weights must be non-negative");
  require(zeta > 0, "zeta must be positive");
  require(std::isfinite(mu_init), "mu_init must be finite");
  require(rho > 1, "rho must exceed 1");
  require(mu_max_factor >= 1, "mu_max_factor must be at least 1");
  require(outer_iters >= 1 && middle_iters >= 1 && inner_iters >= 1, "loop counts must be at least 1");
  require(tol >= 0, "tol must be non-negative");
  require(rank_surrogate_floor > 0, "rank_surrogate_floor must be positive");
}

LsspState LsspState::initial(Index n, Index t, Scalar mu) {
  LsspState s;
  s.x_hat = Matrix::Ones(n, t);
  s.f_g = Matrix::Ones(n, t);
  s.f_t = Matrix::Ones(t, n);
  s.e = Matrix::Ones(n, t);
  s.y1 = Matrix::Ones(n, t);
  s.y2 = Matrix::Ones(t, n);
  s.y3 = Matrix::Ones(n, t);
  s.w_g = Matrix::Ones(n, t);
  s.w_t = Matrix::Ones(t, n);
  s.r_weight = Matrix::Zero(t, t);
  s.mu1 = s.mu2 = s.mu3 = mu;
  return s;
}

Matrix soft_threshold(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& w) {
  require(a.rows() == w.rows() && a.cols() == w.cols(), "soft_threshold: shape mismatch");
  return a.array().sign() * (a.array().abs() - w.array()).max(0);
}

namespace {

void check_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) throw SolverError(what + " produced a non-finite value");
}

// FISTA on  γ‖W⊙F‖₁ + <Y, Z - ΨF> + μ/2‖Z - ΨF‖²  with orthonormal Ψ.
// The smooth part has gradient μA - ΨᵀY - μΨᵀZ.
Matrix accelerated_prox(const Matrix& start, const Matrix& psi_t_y, const Matrix& psi_t_z, const Matrix& weights,
                        Scalar gamma, Scalar mu, Index inner_iters, const char* name) {
  const Scalar tau = 1 / mu;
  const Matrix threshold = (gamma / mu) * weights;
  Matrix f = start;
  Matrix a = start;
  Scalar b = 1;
  for (Index q = 0; q < inner_iters; ++q) {
    const Matrix grad = mu * a - psi_t_y - mu * psi_t_z;
    Matrix next = soft_threshold(a - tau * grad, threshold);
    const Scalar b_next = next_momentum(b);
    a = next + ((b - 1) / b_next) * (next - f);
    f = std::move(next);
    b = b_next;
    if (!f.allFinite())
      throw SolverError(std::string(name) + " inner iteration " + std::to_string(q + 1) + " is not finite");
  }
  return f;
}

}  // namespace

Matrix update_fg(const LsspState& state, const SpectralBases& bases, const LsspConfig& config) {
  const Matrix& psi = bases.psi_g;
  require(psi.cols() == state.x_hat.rows(), "update_fg: basis does not match X̂");
  return accelerated_prox(state.f_g, psi.transpose() * state.y1, psi.transpose() * state.x_hat, state.w_g,
                          config.gamma_g, state.mu1, config.inner_iters, "F_G");
}

Matrix update_ft(const LsspState& state, const SpectralBases& bases, const LsspConfig& config) {
  const Matrix& psi = bases.psi_t;
  require(psi.cols() == state.x_hat.cols(), "update_ft: basis does not match X̂");
  return accelerated_prox(state.f_t, psi.transpose() * state.y2, psi.transpose() * state.x_hat.transpose(),
                          state.w_t, config.gamma_t, state.mu2, config.inner_iters, "F_T");
}

Scalar rank_surrogate_derivative(Scalar x) {
  const Scalar root = std::sqrt(x);
  return 1 / (2 * root * (root + 1));
}

Matrix update_rank_weight(const Eigen::Ref<const Matrix>& x_hat, Scalar floor) {
  require(floor > 0, "rank surrogate floor must be positive");
  if (!x_hat.allFinite()) throw SolverError("rank weight: X̂ is not finite");
  const Matrix gram = x_hat.transpose() * x_hat;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success) throw SolverError("rank weight: eigendecomposition of X̂ᵀX̂ failed");
  const Vector weights =
      eig.eigenvalues().unaryExpr([floor](Scalar l) { return rank_surrogate_derivative(std::max(l, floor)); });
  const Matrix& u = eig.eigenvectors();
  Matrix r = u * weights.asDiagonal() * u.transpose();
  return (r + r.transpose()) / 2;
}

Matrix update_xhat(const LsspState& state, const SpectralBases& bases, const Eigen::Ref<const Matrix>& smoothing_gram,
                   const ObservedData& observed, const LsspConfig& config) {
  const Index t = state.x_hat.cols();
  require(smoothing_gram.rows() == t && smoothing_gram.cols() == t, "update_xhat: D2D2ᵀ has the wrong shape");
  const Matrix rhs = state.y3 - state.y1 - state.y2.transpose() + state.mu1 * (bases.psi_g * state.f_g) +
                     state.mu2 * (state.f_t.transpose() * bases.psi_t.transpose()) +
                     state.mu3 * (observed.values - state.e);
  Matrix system = 2 * state.r_weight + 2 * config.gamma_d * smoothing_gram;
  system.diagonal().array() += state.mu1 + state.mu2 + state.mu3;

  // X̂ S = rhs with S symmetric, i.e. S X̂ᵀ = rhsᵀ.
  Eigen::LLT<Matrix> llt(system);
  Matrix x;
  if (llt.info() == Eigen::Success) {
    x = llt.solve(rhs.transpose()).transpose();
  } else {
    Eigen::LDLT<Matrix> ldlt(system);
    if (ldlt.info() != Eigen::Success) throw SolverError("X̂ update: linear system is singular");
    x = ldlt.solve(rhs.transpose()).transpose();
  }
  check_finite(x, "X̂ update");
  return x;
}

Matrix update_error(const LsspState& state, const ObservedData& observed) {
  return project_onto_complement(state.y3 / state.mu3 + observed.values - state.x_hat, observed.mask);
}

void update_multipliers(LsspState& state, const SpectralBases& bases, const ObservedData& observed,
                        const LsspConfig& config) {
  state.y1 += state.mu1 * (state.x_hat - bases.psi_g * state.f_g);
  state.y2 += state.mu2 * (state.x_hat.transpose() - bases.psi_t * state.f_t);
  state.y3 += state.mu3 * (observed.values - state.x_hat - state.e);
  state.mu1 = std::min(config.rho * state.mu1, state.mu_max);
  state.mu2 = std::min(config.rho * state.mu2, state.mu_max);
  state.mu3 = std::min(config.rho * state.mu3, state.mu_max);
}

std::pair<Matrix, Matrix> update_weights(const Eigen::Ref<const Matrix>& f_g, const Eigen::Ref<const Matrix>& f_t,
                                         Scalar zeta) {
  require(zeta > 0, "zeta must be positive");
  return {(f_g.array().abs() + zeta).inverse().matrix(), (f_t.array().abs() + zeta).inverse().matrix()};
}

Scalar lssp_objective(const LsspState& state, const LsspConfig& config) {
  // g(λ(X̂ᵀX̂)) = log(σ(X̂) + 1); zero eigenvalues contribute nothing.
  Eigen::BDCSVD<Matrix> svd(state.x_hat);
  const Scalar rank_term = (svd.singularValues().array() + 1).log().sum();
  const Scalar sparse_g = (state.w_g.array() * state.f_g.array()).abs().sum();
  const Scalar sparse_t = (state.w_t.array() * state.f_t.array()).abs().sum();
  Scalar smooth = 0;
  if (state.x_hat.cols() >= 3) {
    const Index w = state.x_hat.cols() - 2;
    smooth = (state.x_hat.leftCols(w) - 2 * state.x_hat.middleCols(1, w) + state.x_hat.rightCols(w)).squaredNorm();
  }
  return rank_term + config.gamma_g * sparse_g + config.gamma_t * sparse_t + config.gamma_d * smooth;
}

namespace {

IterationRecord record(const LsspState& s, const SpectralBases& bases, const ObservedData& obs,
                       const LsspConfig& config, Index outer, Index middle) {
  IterationRecord rec;
  rec.outer = outer;
  rec.middle = middle;
  rec.objective = lssp_objective(s, config);
  rec.residual_graph = (s.x_hat - bases.psi_g * s.f_g).norm();
  rec.residual_time = (s.x_hat.transpose() - bases.psi_t * s.f_t).norm();
  rec.residual_observed = (obs.values - s.x_hat - s.e).norm();
  const Matrix err = project_onto_samples(s.x_hat - obs.values, obs.mask);
  const Index count = obs.mask.count();
  rec.observed_rmse = count > 0 ? std::sqrt(err.squaredNorm() / static_cast<Scalar>(count)) : 0;
  rec.observed_max_error = count > 0 ? err.cwiseAbs().maxCoeff() : 0;
  rec.mu = s.mu3;
  return rec;
}

}  // namespace

ReconstructionResult lssp_reconstruct(const SampleSet& samples, const SpectralBases& bases,
                                      const LsspConfig& config) {
  return lssp_reconstruct(samples, bases, config, nullptr);
}

ReconstructionResult lssp_reconstruct(const SampleSet& samples, const SpectralBases& bases, const LsspConfig& config,
                                      LsspState* final_state) {
  config.validate();
  validate(samples);
  const Index n = samples.n;
  const Index t = samples.t;
  require(bases.num_vertices() == n && bases.num_steps() == t, "spectral bases do not match the sample set");

  const ObservedData obs = observed_matrix(samples);
  ReconstructionResult result;

  Scalar mu = config.mu_init;
  if (mu <= 0) {
    const Scalar sigma_max = obs.values.size() > 0 ? Eigen::BDCSVD<Matrix>(obs.values).singularValues()(0) : 0;
    if (!(sigma_max > 0)) {
      // Every observation is zero: X̂ = 0 is feasible and zeroes each term.
      result.estimate = Matrix::Zero(n, t);
      result.converged = true;
      result.notes.emplace_back("all observed values are zero; returning the zero signal");
      if (final_state) {
        *final_state = LsspState::initial(n, t, 1);
        final_state->x_hat.setZero();
      }
      return result;
    }
    mu = 1 / (2 * sigma_max);
  }

  LsspState s = LsspState::initial(n, t, mu);
  s.mu_max = config.mu_max_factor * mu;
  const Matrix smoothing_gram = t >= 3 ? Matrix(second_difference(t) * second_difference(t).transpose())
                                       : Matrix(Matrix::Zero(t, t));

  Matrix previous = s.x_hat;
  for (Index p = 1; p <= config.outer_iters; ++p) {
    for (Index k = 1; k <= config.middle_iters; ++k) {
      const std::string where = "outer " + std::to_string(p) + ", middle " + std::to_string(k) + ": ";
      try {
        s.f_g = update_fg(s, bases, config);
        s.f_t = update_ft(s, bases, config);
        s.r_weight = update_rank_weight(s.x_hat, config.rank_surrogate_floor);
        s.x_hat = update_xhat(s, bases, smoothing_gram, obs, config);
        s.e = update_error(s, obs);
        update_multipliers(s, bases, obs, config);
        check_finite(s.y1, "Y1 update");
        check_finite(s.y2, "Y2 update");
        check_finite(s.y3, "Y3 update");
      } catch (const SolverError& err) {
        throw SolverError(where + err.what());
      }
      result.diagnostics.push_back(record(s, bases, obs, config, p, k));
    }
    result.outer_iterations = p;

    std::tie(s.w_g, s.w_t) = update_weights(s.f_g, s.f_t, config.zeta);
    const Scalar ref = previous.norm();
    const Scalar change = (s.x_hat - previous).norm() / (ref > 0 ? ref : 1);
    previous = s.x_hat;
    if (change < config.tol) {
      result.converged = true;
      break;
    }
  }

  result.estimate = s.x_hat;
  if (final_state) *final_state = std::move(s);
  return result;
}

StructuralMissing find_structural_missing(const Mask& mask) {
  StructuralMissing sm;
  for (Index i = 0; i < mask.rows(); ++i)
    if (!mask.row(i).any()) sm.empty_rows.push_back(i);
  for (Index j = 0; j < mask.cols(); ++j)
    if (!mask.col(j).any()) sm.empty_cols.push_back(j);
  return sm;
}

}  // namespace ftvgs
