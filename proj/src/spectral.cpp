#include "ftvgs/spectral.hpp"

#include <cmath>
#include <numbers>

namespace ftvgs {

namespace {

void fix_signs(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    for (Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) > 1e-12) {
        if (vectors(r, c) < 0) vectors.col(c) = -vectors.col(c);
        break;
      }
    }
  }
}

}  // namespace

GraphBasis gft_basis(const GraphTopology& topology) {
  const Matrix& lap = topology.laplacian;
  require(lap.rows() == topology.num_vertices && lap.cols() == topology.num_vertices,
          "laplacian shape does not match vertex count");
  if (!lap.allFinite()) throw SolverError("laplacian has non-finite entries");

  GraphBasis basis;
  if (lap.isZero(0)) {
    // Edgeless graph: every vector is an eigenvector.
    basis.psi = Matrix::Identity(lap.rows(), lap.cols());
    basis.eigenvalues = Vector::Zero(lap.rows());
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
  if (eig.info() != Eigen::Success) throw SolverError("laplacian eigendecomposition failed");
  basis.psi = eig.eigenvectors();
  basis.eigenvalues = eig.eigenvalues();
  fix_signs(basis.psi);
  return basis;
}

Matrix harmonic_basis(Index t) {
  require(t >= 1, "harmonic basis needs T >= 1");
  Matrix psi(t, t);
  const Scalar n = static_cast<Scalar>(t);
  psi.col(0).setConstant(1 / std::sqrt(n));
  const Scalar pair_scale = std::sqrt(2 / n);
  Index col = 1;
  for (Index k = 1; 2 * k < t; ++k) {
    for (Index s = 0; s < t; ++s) {
      const Scalar angle = 2 * std::numbers::pi * static_cast<Scalar>(k * s % t) / n;
      psi(s, col) = pair_scale * std::cos(angle);
      psi(s, col + 1) = pair_scale * std::sin(angle);
    }
    col += 2;
  }
  if (t % 2 == 0 && t > 1) {
    for (Index s = 0; s < t; ++s) psi(s, col) = (s % 2 == 0 ? 1 : -1) / std::sqrt(n);
    ++col;
  }
  return psi;
}

SpectralBases make_bases(const GraphTopology& topology, Index t) {
  GraphBasis g = gft_basis(topology);
  return {std::move(g.psi), harmonic_basis(t), std::move(g.eigenvalues)};
}

SpectralCoefficients analyze(const TimeVertexSignal& signal, const SpectralBases& bases) {
  require(signal.num_vertices() == bases.num_vertices() && signal.num_steps() == bases.num_steps(),
          "signal dimensions do not match spectral bases");
  const Matrix& x = signal.data();
  SpectralCoefficients c;
  c.f_g = bases.psi_g.transpose() * x;
  c.f_t = bases.psi_t.transpose() * x.transpose();
  c.f_j = c.f_g * bases.psi_t;
  return c;
}

Matrix synthesize_joint(const Eigen::Ref<const Matrix>& f_j, const SpectralBases& bases) {
  require(f_j.rows() == bases.num_vertices() && f_j.cols() == bases.num_steps(),
          "joint spectrum dimensions do not match spectral bases");
  return bases.psi_g * f_j * bases.psi_t.transpose();
}

TimeVertexSignal synthesize(const SpectralCoefficients& coefficients, const SpectralBases& bases) {
  return TimeVertexSignal(synthesize_joint(coefficients.f_j, bases));
}

}  // namespace ftvgs
