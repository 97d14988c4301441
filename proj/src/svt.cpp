#include "ftvgs/lssp.hpp"

#include <cmath>
#include <string>

namespace ftvgs {

ReconstructionResult svt_baseline(const SampleSet& samples, const SvtConfig& config) {
  validate(samples);
  require(config.max_iters >= 1, "SVT needs at least one iteration");
  require(config.tol >= 0, "SVT tol must be non-negative");
  const ObservedData obs = observed_matrix(samples);
  const Index observed = obs.mask.count();

  ReconstructionResult result;
  result.estimate = Matrix::Zero(samples.n, samples.t);
  const StructuralMissing missing = find_structural_missing(obs.mask);
  if (missing.detected()) {
    result.notes.push_back("structural-missing detected: " + std::to_string(missing.empty_rows.size()) +
                           " empty rows, " + std::to_string(missing.empty_cols.size()) + " empty columns");
  }
  const Scalar data_norm = obs.values.norm();
  if (observed == 0 || !(data_norm > 0)) {
    result.converged = true;
    result.notes.emplace_back("no nonzero observations; returning the zero signal");
    return result;
  }

  const Scalar mean_abs = obs.values.cwiseAbs().sum() / static_cast<Scalar>(observed);
  const Scalar alpha = static_cast<Scalar>(observed) / static_cast<Scalar>(samples.n * samples.t);
  const Scalar threshold = config.threshold > 0
                               ? config.threshold
                               : 5 * std::sqrt(static_cast<Scalar>(samples.n * samples.t)) * mean_abs;
  const Scalar step = config.step > 0 ? config.step : 1.2 / alpha;

  Matrix y = Matrix::Zero(samples.n, samples.t);
  Matrix x = y;
  for (Index k = 1; k <= config.max_iters; ++k) {
    Eigen::BDCSVD<Matrix> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector shrunk = (svd.singularValues().array() - threshold).max(0).matrix();
    x = svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
    const Matrix residual = project_onto_samples(obs.values - x, obs.mask);
    const Scalar rel = residual.norm() / data_norm;
    if (!std::isfinite(rel) || x.norm() > 1e150)
      throw SolverError("SVT diverged at iteration " + std::to_string(k));

    IterationRecord rec;
    rec.outer = 1;
    rec.middle = k;
    rec.objective = shrunk.sum();
    rec.residual_observed = residual.norm();
    rec.observed_rmse = std::sqrt(residual.squaredNorm() / static_cast<Scalar>(observed));
    rec.observed_max_error = residual.cwiseAbs().maxCoeff();
    rec.mu = step;
    result.diagnostics.push_back(rec);

    if (rel < config.tol) {
      result.converged = true;
      break;
    }
    y += step * residual;
  }

  // Rows and columns without observations never receive a residual, so Y
  // and hence X are zero there; remove the round-off.
  for (Index i : missing.empty_rows) x.row(i).setZero();
  for (Index j : missing.empty_cols) x.col(j).setZero();
  result.outer_iterations = 1;
  result.estimate = std::move(x);
  return result;
}

}  // namespace ftvgs
