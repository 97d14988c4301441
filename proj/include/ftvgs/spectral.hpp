#pragma once

#include "ftvgs/common.hpp"
#include "ftvgs/signal.hpp"

namespace ftvgs {

/// Laplacian eigenbasis, eigenvalues ascending. Each eigenvector is signed so
/// that its first entry with magnitude above 1e-12 is positive.
struct GraphBasis {
  Matrix psi;
  Vector eigenvalues;
};

struct SpectralBases {
  Matrix psi_g;        // N×N
  Matrix psi_t;        // T×T
  Vector eigenvalues_g;

  Index num_vertices() const { return psi_g.rows(); }
  Index num_steps() const { return psi_t.rows(); }
};

/// Graph spectrum (X = Ψ_G F_G), time spectrum (Xᵀ = Ψ_T F_T) and joint
/// spectrum F_J = Ψ_Gᵀ X Ψ_T.
struct SpectralCoefficients {
  Matrix f_g;  // N×T
  Matrix f_t;  // T×N
  Matrix f_j;  // N×T
};

GraphBasis gft_basis(const GraphTopology& topology);

/// Real orthonormal Fourier basis: a constant column, then cosine/sine pairs
/// of increasing frequency, then (even T) the alternating Nyquist column.
Matrix harmonic_basis(Index t);

SpectralBases make_bases(const GraphTopology& topology, Index t);

SpectralCoefficients analyze(const TimeVertexSignal& signal, const SpectralBases& bases);

/// Inverts analyze() from the joint spectrum.
TimeVertexSignal synthesize(const SpectralCoefficients& coefficients, const SpectralBases& bases);

/// Ψ_G F_J Ψ_Tᵀ.
Matrix synthesize_joint(const Eigen::Ref<const Matrix>& f_j, const SpectralBases& bases);

}  // namespace ftvgs
