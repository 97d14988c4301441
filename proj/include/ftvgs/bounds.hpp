#pragma once

#include "ftvgs/analysis.hpp"
#include "ftvgs/common.hpp"
#include "ftvgs/signal.hpp"

#include <cstdint>
#include <vector>

namespace ftvgs {

/// δ ∈ (0,1), ε ∈ (0,1), η ∈ [0,1), β > 1.
struct BoundParams {
  Scalar delta = 0.1;
  Scalar epsilon = 0.5;
  Scalar eta = 0.5;
  Scalar beta = 1.21;

  void validate() const;
};

/// The matrix quantities the evaluators consume. Usually taken from
/// thin_svd_summary of a concrete signal; may be supplied directly.
struct MatrixProperties {
  Index rank = 1;
  Scalar kappa = 1;
  Scalar mu1 = 1;
  Scalar mu2 = 1;
  Index rows = 1;  // N
  Index cols = 1;  // T

  static MatrixProperties from(const SvdSummary& svd);
};

struct SelectionBounds {
  Index min_rows = 0;
  Index min_cols = 0;
};

/// p, the Lemma-2 failure term, and (1-p)². With p ≥ 1 or p < 0 the
/// probability carries no information; it is still reported verbatim.
struct CoherenceBounds {
  Scalar u_bound = 0;
  Scalar v_bound = 0;
  Scalar p = 0;
  Scalar success_prob = 0;
  bool informative = false;
};

struct BoundsReport {
  MatrixProperties matrix;
  BoundParams params;
  Index size_i = 0;
  Index size_j = 0;
  Index min_rows = 0;
  Index min_cols = 0;
  Index min_samples = 0;
  Scalar min_samples_exact = 0;  // before the ceiling
  Scalar lemma2_u_bound = 0;
  Scalar lemma2_v_bound = 0;
  Scalar lemma2_p = 0;
  Scalar lemma2_success_prob = 0;
  bool lemma2_informative = false;
  Scalar theorem_success_prob = 0;
  bool theorem_informative = false;
  bool feasible = false;
};

/// Ceiling that ignores relative round-off below 1e-9, so a bound that is
/// mathematically an integer is not pushed up by one.
Index tolerant_ceil(Scalar x);

/// |I| ≥ 3 r μ1 ln(2r/δ)/ε², |J| ≥ 3 r μ2 ln(2r/δ)/ε².
SelectionBounds lemma1_min_selection(Index rank, Scalar mu1, Scalar mu2, Scalar delta, Scalar epsilon);

/// Lemma-2 failure term p = r·[e^{-η}/(1-η)^{1-η}]^{ln r}.
Scalar lemma2_failure_term(Index rank, Scalar eta);

CoherenceBounds lemma2_coherence_bounds(const MatrixProperties& m, Index size_i, Index size_j, Scalar eta);

/// Lower bound on |S| and the composite recovery probability.
BoundsReport theorem_min_samples(const MatrixProperties& m, Index size_i, Index size_j,
                                 const BoundParams& params);

struct RankPreservationResult {
  Scalar probability = 0;
  Index successes = 0;
  Index trials = 0;
  Index target_rank = 0;
};

/// Fraction of trials in which size_i uniformly chosen rows keep the
/// numerical rank of the full signal. Trial k uses seed + k.
RankPreservationResult mc_rank_preservation(const TimeVertexSignal& signal, Index size_i, Index trials,
                                            std::uint64_t seed, Scalar rank_tol = kDefaultRankTol,
                                            std::size_t jobs = 1);

struct CoherenceTransferResult {
  Scalar max_u_norm = 0;  // max over trials of ‖U_RC‖_{2,∞}
  Scalar max_v_norm = 0;  // max over trials of ‖V_RC‖_{2,∞}
  Scalar fraction_within = 0;
  CoherenceBounds bounds;
  Index used_trials = 0;
  Index excluded_trials = 0;  // subsample lost rank
};

/// Per trial: choose I then J, factor X_R = U(I,:) Σ Vᵀ and then X_RC
/// through the small r×r SVDs, and compare row norms against Lemma 2.
CoherenceTransferResult mc_coherence_transfer(const TimeVertexSignal& signal, Index size_i, Index size_j,
                                              Index trials, std::uint64_t seed, Scalar eta,
                                              Scalar rank_tol = kDefaultRankTol, std::size_t jobs = 1);

/// U_RC and V_RC for given index sets, using the two-stage factorization.
struct SubmatrixFactors {
  Matrix u_rc;
  Matrix v_rc;
  Vector sigma_rc;
  Index rank = 0;
};
SubmatrixFactors submatrix_factors(const SvdSummary& svd, const std::vector<Index>& rows,
                                   const std::vector<Index>& cols, Scalar rank_tol = kDefaultRankTol);

}  // namespace ftvgs
