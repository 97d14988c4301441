#include "ftvgs/bounds.hpp"

#include "ftvgs/parallel.hpp"
#include "ftvgs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ftvgs {

void BoundParams::validate() const {
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  require(eta >= 0 && eta < 1, "eta must lie in [0, 1)");
  require(beta > 1, "beta must exceed 1");
}

MatrixProperties MatrixProperties::from(const SvdSummary& svd) {
  require(svd.rank > 0, "bounds need a matrix of positive rank");
  return {svd.rank, svd.condition_number, svd.mu1, svd.mu2, svd.rows, svd.cols};
}

Index tolerant_ceil(Scalar x) {
  require(std::isfinite(x), "bound is not finite");
  const Scalar c = std::ceil(x - 1e-9 * std::max<Scalar>(1, std::abs(x)));
  if (c >= static_cast<Scalar>(std::numeric_limits<Index>::max())) return std::numeric_limits<Index>::max();
  return static_cast<Index>(c);
}

SelectionBounds lemma1_min_selection(Index rank, Scalar mu1, Scalar mu2, Scalar delta, Scalar epsilon) {
  require(rank >= 1, "rank must be at least 1");
  require(mu1 >= 1 && mu2 >= 1, "incoherence parameters must be at least 1");
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  const Scalar r = static_cast<Scalar>(rank);
  const Scalar common = 3 * r * std::log(2 * r / delta) / (epsilon * epsilon);
  return {tolerant_ceil(common * mu1), tolerant_ceil(common * mu2)};
}

Scalar lemma2_failure_term(Index rank, Scalar eta) {
  require(eta >= 0 && eta < 1, "eta must lie in [0, 1)");
  require(rank >= 1, "rank must be at least 1");
  const Scalar r = static_cast<Scalar>(rank);
  const Scalar base = std::exp(-eta) / std::pow(1 - eta, 1 - eta);
  return r * std::pow(base, std::log(r));
}

CoherenceBounds lemma2_coherence_bounds(const MatrixProperties& m, Index size_i, Index size_j, Scalar eta) {
  require(eta >= 0 && eta < 1, "eta must lie in [0, 1)");
  require(size_i >= m.rank && size_j >= m.rank, "selection sizes must be at least the rank");
  const Scalar r = static_cast<Scalar>(m.rank);
  const Scalar si = static_cast<Scalar>(size_i);
  const Scalar sj = static_cast<Scalar>(size_j);
  const Scalar n = static_cast<Scalar>(m.rows);

  CoherenceBounds b;
  b.u_bound = m.kappa * std::sqrt(m.mu1 * r / ((1 - eta) * si));
  b.v_bound = m.kappa / (1 - eta) * std::sqrt(m.mu2 * n * r / (si * sj));
  b.p = lemma2_failure_term(m.rank, eta);
  b.success_prob = (1 - b.p) * (1 - b.p);
  b.informative = b.p >= 0 && b.p < 1;
  return b;
}

BoundsReport theorem_min_samples(const MatrixProperties& m, Index size_i, Index size_j,
                                 const BoundParams& params) {
  params.validate();
  require(m.rank >= 1 && m.kappa >= 1, "matrix properties need rank >= 1 and kappa >= 1");

  BoundsReport rep;
  rep.matrix = m;
  rep.params = params;
  rep.size_i = size_i;
  rep.size_j = size_j;

  const SelectionBounds sel = lemma1_min_selection(m.rank, m.mu1, m.mu2, params.delta, params.epsilon);
  rep.min_rows = sel.min_rows;
  rep.min_cols = sel.min_cols;

  const CoherenceBounds coh = lemma2_coherence_bounds(m, size_i, size_j, params.eta);
  rep.lemma2_u_bound = coh.u_bound;
  rep.lemma2_v_bound = coh.v_bound;
  rep.lemma2_p = coh.p;
  rep.lemma2_success_prob = coh.success_prob;
  rep.lemma2_informative = coh.informative;

  const Scalar r = static_cast<Scalar>(m.rank);
  const Scalar si = static_cast<Scalar>(size_i);
  const Scalar sj = static_cast<Scalar>(size_j);
  const Scalar n = static_cast<Scalar>(std::max(size_i, size_j));
  const Scalar log2n = std::log(2 * n);
  const Scalar one_minus_eta = 1 - params.eta;
  rep.min_samples_exact = 32 * params.beta * std::pow(m.kappa, 4) * r * r * static_cast<Scalar>(m.rows) /
                          (one_minus_eta * one_minus_eta * one_minus_eta) * m.mu1 * m.mu2 * (si + sj) / si *
                          log2n * log2n;
  rep.min_samples = tolerant_ceil(rep.min_samples_exact);

  const Scalar keep = (1 - params.delta) * (1 - params.delta) * coh.success_prob;
  rep.theorem_success_prob = keep - 6 * std::log(n) / std::pow(si + sj, 2 * params.beta - 2) -
                             std::pow(n, 2 - 2 * std::sqrt(params.beta));
  rep.theorem_informative = coh.informative && rep.theorem_success_prob > 0 && rep.theorem_success_prob <= 1;

  rep.feasible = rep.min_samples <= size_i * size_j && rep.min_rows <= m.rows && rep.min_cols <= m.cols;
  return rep;
}

namespace {

std::vector<Index> sorted_choice(Rng& rng, Index n, Index k) {
  auto pick = rng.choose(n, k);
  std::sort(pick.begin(), pick.end());
  return pick;
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Index>(k)) = m.row(rows[k]);
  return out;
}

}  // namespace

RankPreservationResult mc_rank_preservation(const TimeVertexSignal& signal, Index size_i, Index trials,
                                            std::uint64_t seed, Scalar rank_tol, std::size_t jobs) {
  const Index n = signal.num_vertices();
  require(size_i >= 1 && size_i <= n, "size_i must lie in [1, N]");
  require(trials >= 1, "trials must be at least 1");

  RankPreservationResult res;
  res.trials = trials;
  res.target_rank = numerical_rank(signal.data(), rank_tol);

  std::vector<char> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(hit.size(), jobs, [&](std::size_t k) {
    Rng rng(seed + k);
    const Matrix sub = take_rows(signal.data(), sorted_choice(rng, n, size_i));
    hit[k] = numerical_rank(sub, rank_tol) == res.target_rank;
  });
  res.successes = std::count(hit.begin(), hit.end(), 1);
  res.probability = static_cast<Scalar>(res.successes) / static_cast<Scalar>(trials);
  return res;
}

SubmatrixFactors submatrix_factors(const SvdSummary& svd, const std::vector<Index>& rows,
                                   const std::vector<Index>& cols, Scalar rank_tol) {
  SubmatrixFactors f;
  const Index r = svd.rank;
  require(r >= 1, "submatrix factors need a matrix of positive rank");

  // X_R = U(I,:) Σ Vᵀ = U_R Σ_R Ṽ_Rᵀ Vᵀ, V_R = V Ṽ_R.
  const Matrix scaled = take_rows(svd.u, rows) * svd.sigma.asDiagonal();
  Eigen::JacobiSVD<Matrix> first(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma_r = first.singularValues();
  const Scalar cutoff = rank_tol * svd.sigma(0);
  if ((sigma_r.array() > cutoff).count() < r) return f;
  const Matrix u_r = first.matrixU();
  const Matrix v_r = svd.v * first.matrixV();

  // X_RC = U_R Σ_R V_R(J,:)ᵀ, and Σ_R V_R(J,:)ᵀ = Ũ Σ_RC V_RCᵀ.
  const Matrix inner = sigma_r.asDiagonal() * take_rows(v_r, cols).transpose();
  Eigen::JacobiSVD<Matrix> second(inner, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if ((second.singularValues().array() > cutoff).count() < r) return f;

  f.u_rc = u_r * second.matrixU();
  f.v_rc = second.matrixV();
  f.sigma_rc = second.singularValues();
  f.rank = r;
  return f;
}

CoherenceTransferResult mc_coherence_transfer(const TimeVertexSignal& signal, Index size_i, Index size_j,
                                              Index trials, std::uint64_t seed, Scalar eta, Scalar rank_tol,
                                              std::size_t jobs) {
  const Index n = signal.num_vertices();
  const Index t = signal.num_steps();
  require(size_i >= 1 && size_i <= n, "size_i must lie in [1, N]");
  require(size_j >= 1 && size_j <= t, "size_j must lie in [1, T]");
  require(trials >= 1, "trials must be at least 1");

  const SvdSummary svd = thin_svd_summary(signal.data(), rank_tol);
  require(svd.rank >= 1, "coherence transfer needs a nonzero signal");
  require(size_i >= svd.rank && size_j >= svd.rank, "selection sizes must be at least the rank");

  CoherenceTransferResult res;
  res.bounds = lemma2_coherence_bounds(MatrixProperties::from(svd), size_i, size_j, eta);

  struct Trial {
    bool used = false;
    bool within = false;
    Scalar u = 0;
    Scalar v = 0;
  };
  std::vector<Trial> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), jobs, [&](std::size_t k) {
    Rng rng(seed + k);
    const auto rows = sorted_choice(rng, n, size_i);
    const auto cols = sorted_choice(rng, t, size_j);
    const SubmatrixFactors f = submatrix_factors(svd, rows, cols, rank_tol);
    if (f.rank == 0) return;
    Trial& tr = out[k];
    tr.used = true;
    tr.u = row_2inf_norm(f.u_rc);
    tr.v = row_2inf_norm(f.v_rc);
    tr.within = tr.u <= res.bounds.u_bound * (1 + 1e-12) && tr.v <= res.bounds.v_bound * (1 + 1e-12);
  });

  Index within = 0;
  for (const Trial& tr : out) {
    if (!tr.used) {
      ++res.excluded_trials;
      continue;
    }
    ++res.used_trials;
    within += tr.within;
    res.max_u_norm = std::max(res.max_u_norm, tr.u);
    res.max_v_norm = std::max(res.max_v_norm, tr.v);
  }
  res.fraction_within =
      res.used_trials > 0 ? static_cast<Scalar>(within) / static_cast<Scalar>(res.used_trials) : 0;
  return res;
}

}  // namespace ftvgs
