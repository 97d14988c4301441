#pragma once

#include "ftvgs/common.hpp"
#include "ftvgs/signal.hpp"

namespace ftvgs {

inline constexpr Scalar kDefaultRankTol = 1e-9;

/// Rank-r part of the thin SVD X = U Σ Vᵀ with the incoherence parameters
/// mu1 = (N/r)·‖U‖²_{2,∞} and mu2 = (T/r)·‖V‖²_{2,∞}.
///
/// For the all-zero matrix rank is 0, the factors are empty and
/// condition_number, mu1 and mu2 are NaN.
struct SvdSummary {
  Matrix u;
  Vector sigma;
  Matrix v;
  Index rank = 0;
  Scalar condition_number = 0;
  Scalar mu1 = 0;
  Scalar mu2 = 0;
  Index rows = 0;
  Index cols = 0;

  bool incoherence_defined() const { return rank > 0; }
};

/// Largest row-wise ℓ2 norm.
Scalar row_2inf_norm(const Eigen::Ref<const Matrix>& m);

/// Count of singular values above rank_tol·σ_1.
Index numerical_rank(const Eigen::Ref<const Matrix>& m, Scalar rank_tol = kDefaultRankTol);

SvdSummary thin_svd_summary(const Eigen::Ref<const Matrix>& m, Scalar rank_tol = kDefaultRankTol);

inline SvdSummary thin_svd_summary(const TimeVertexSignal& signal, Scalar rank_tol = kDefaultRankTol) {
  return thin_svd_summary(signal.data(), rank_tol);
}

}  // namespace ftvgs
