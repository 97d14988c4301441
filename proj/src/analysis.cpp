#include "ftvgs/analysis.hpp"

#include <limits>

namespace ftvgs {

namespace {

Index count_above(const Vector& sigma, Scalar rank_tol) {
  if (sigma.size() == 0 || !(sigma(0) > 0)) return 0;
  const Scalar cutoff = rank_tol * sigma(0);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cutoff) ++r;
  return r;
}

}  // namespace

Scalar row_2inf_norm(const Eigen::Ref<const Matrix>& m) {
  if (m.size() == 0) return 0;
  return m.rowwise().norm().maxCoeff();
}

Index numerical_rank(const Eigen::Ref<const Matrix>& m, Scalar rank_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  return count_above(svd.singularValues(), rank_tol);
}

SvdSummary thin_svd_summary(const Eigen::Ref<const Matrix>& m, Scalar rank_tol) {
  require(m.allFinite(), "matrix contains non-finite entries");
  SvdSummary s;
  s.rows = m.rows();
  s.cols = m.cols();
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index r = count_above(svd.singularValues(), rank_tol);
  s.rank = r;
  if (r == 0) {
    constexpr Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
    s.u = Matrix(m.rows(), 0);
    s.v = Matrix(m.cols(), 0);
    s.sigma = Vector(0);
    s.condition_number = s.mu1 = s.mu2 = nan;
    return s;
  }
  s.u = svd.matrixU().leftCols(r);
  s.v = svd.matrixV().leftCols(r);
  s.sigma = svd.singularValues().head(r);
  s.condition_number = s.sigma(0) / s.sigma(r - 1);
  const Scalar u_norm = row_2inf_norm(s.u);
  const Scalar v_norm = row_2inf_norm(s.v);
  s.mu1 = static_cast<Scalar>(m.rows()) / static_cast<Scalar>(r) * u_norm * u_norm;
  s.mu2 = static_cast<Scalar>(m.cols()) / static_cast<Scalar>(r) * v_norm * v_norm;
  return s;
}

}  // namespace ftvgs
