#pragma once

#include "ftvgs/common.hpp"
#include "ftvgs/sampling.hpp"
#include "ftvgs/spectral.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ftvgs {

/// Parameters of the low-rank + sparse + smooth reconstruction.
///
/// The three penalties μ1, μ2, μ3 share one initial value and one growth
/// factor. A non-positive mu_init selects 1/(2·σ_max(X_S)).
struct LsspConfig {
  Scalar gamma_g = 1;    // weighted ℓ1 on the graph spectrum F_G
  Scalar gamma_t = 1;    // weighted ℓ1 on the time spectrum F_T
  Scalar gamma_d = 0.1;  // ‖X̂ D2‖²_F
  Scalar zeta = 1e-3;    // reweighting offset
  Scalar mu_init = 0;
  Scalar rho = 1.05;
  Scalar mu_max_factor = 1e8;  // penalties are capped at mu_max_factor·mu_init
  Index outer_iters = 5;
  Index middle_iters = 50;
  Index inner_iters = 10;
  Scalar tol = 1e-4;  // outer stop: ‖ΔX̂‖_F / ‖X̂‖_F
  Scalar rank_surrogate_floor = 1e-12;

  void validate() const;
};

/// All iterates of the augmented Lagrangian. f_t and y2 are T×N; every
/// other matrix is N×T except r_weight (T×T).
struct LsspState {
  Matrix x_hat;
  Matrix f_g;
  Matrix f_t;
  Matrix e;
  Matrix y1;
  Matrix y2;
  Matrix y3;
  Matrix w_g;
  Matrix w_t;
  Matrix r_weight;
  Scalar mu1 = 1;
  Scalar mu2 = 1;
  Scalar mu3 = 1;
  Scalar mu_max = 1e8;

  /// Iterates filled with ones, unit weights, R = 0.
  static LsspState initial(Index n, Index t, Scalar mu);
};

/// sign(A)·max(|A| - W, 0), elementwise.
Matrix soft_threshold(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& w);

/// Momentum sequence b^{q+1} = (1 + sqrt(4 (b^q)² + 1)) / 2.
inline Scalar next_momentum(Scalar b) { return (1 + std::sqrt(4 * b * b + 1)) / 2; }

/// Q accelerated proximal-gradient steps on the F_G subproblem, starting
/// from state.f_g with step 1/μ1 and thresholds γ_G·W_G/μ1. Returns the
/// last proximal iterate.
Matrix update_fg(const LsspState& state, const SpectralBases& bases, const LsspConfig& config);

/// Same as update_fg for F_T, against X̂ᵀ, Ψ_T, Y2, μ2 and γ_T·W_T.
Matrix update_ft(const LsspState& state, const SpectralBases& bases, const LsspConfig& config);

/// g'(x) = 1 / (2 √x (√x + 1)) for the surrogate g(x) = log(√x + 1).
Scalar rank_surrogate_derivative(Scalar x);

/// R = U g'(Λ) Uᵀ from the eigendecomposition of X̂ᵀX̂, with eigenvalues
/// clamped below at `floor`.
Matrix update_rank_weight(const Eigen::Ref<const Matrix>& x_hat, Scalar floor);

/// Closed-form X̂ from the stationarity condition of the Lagrangian. The
/// right-hand factor 2R + 2γ_d D2D2ᵀ + (μ1+μ2+μ3)I is symmetric positive
/// definite, so a Cholesky solve replaces the pseudo-inverse.
/// `smoothing_gram` is D2·D2ᵀ (T×T).
Matrix update_xhat(const LsspState& state, const SpectralBases& bases, const Eigen::Ref<const Matrix>& smoothing_gram,
                   const ObservedData& observed, const LsspConfig& config);

/// E = P_{S^c}(Y3/μ3 + X_S - X̂); zero on S.
Matrix update_error(const LsspState& state, const ObservedData& observed);

/// Dual ascent on Y1..Y3 with the current penalties, then μ ← min(ρμ, μ_max).
void update_multipliers(LsspState& state, const SpectralBases& bases, const ObservedData& observed,
                        const LsspConfig& config);

/// W(i,j) = 1 / (|F(i,j)| + ζ) for both spectra.
std::pair<Matrix, Matrix> update_weights(const Eigen::Ref<const Matrix>& f_g, const Eigen::Ref<const Matrix>& f_t,
                                         Scalar zeta);

/// Σ_i g(λ_i(X̂ᵀX̂)) + γ_G‖W_G⊙F_G‖₁ + γ_T‖W_T⊙F_T‖₁ + γ_d‖X̂ D2‖²_F.
Scalar lssp_objective(const LsspState& state, const LsspConfig& config);

/// One row per middle iteration.
struct IterationRecord {
  Index outer = 0;
  Index middle = 0;
  Scalar objective = 0;
  Scalar residual_graph = 0;     // ‖X̂ - Ψ_G F_G‖_F
  Scalar residual_time = 0;      // ‖X̂ᵀ - Ψ_T F_T‖_F
  Scalar residual_observed = 0;  // ‖X_S - X̂ - E‖_F
  Scalar observed_rmse = 0;      // over S
  Scalar observed_max_error = 0; // max over S of |X̂ - X_S|
  Scalar mu = 0;
};

struct ReconstructionResult {
  Matrix estimate;
  std::vector<IterationRecord> diagnostics;
  Index outer_iterations = 0;
  bool converged = false;
  std::vector<std::string> notes;
};

/// Outer reweighting loop around the ADMM middle loop.
ReconstructionResult lssp_reconstruct(const SampleSet& samples, const SpectralBases& bases,
                                      const LsspConfig& config = {});

/// Same as above, also returning the final state.
ReconstructionResult lssp_reconstruct(const SampleSet& samples, const SpectralBases& bases, const LsspConfig& config,
                                      LsspState* final_state);

/// Rows and columns of the mask with no observation.
struct StructuralMissing {
  std::vector<Index> empty_rows;
  std::vector<Index> empty_cols;
  bool detected() const { return !empty_rows.empty() || !empty_cols.empty(); }
};
StructuralMissing find_structural_missing(const Mask& mask);

/// Singular value thresholding. Non-positive threshold/step select the
/// defaults 5·√(NT)·mean|X_S| and 1.2/α_total.
struct SvtConfig {
  Scalar threshold = 0;
  Scalar step = 0;
  Index max_iters = 500;
  Scalar tol = 1e-4;
};

ReconstructionResult svt_baseline(const SampleSet& samples, const SvtConfig& config = {});

}  // namespace ftvgs
