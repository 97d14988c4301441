#include "ftvgs/signal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace ftvgs {

TimeVertexSignal::TimeVertexSignal(Matrix data) : data_(std::move(data)) {
  require(data_.rows() >= 1 && data_.cols() >= 1, "signal must have N >= 1 and T >= 1");
  require(data_.allFinite(), "signal contains non-finite entries");
}

GraphTopology build_incidence(Index num_vertices, const std::vector<Edge>& edges) {
  require(num_vertices >= 1, "graph must have at least one vertex");
  GraphTopology g;
  g.num_vertices = num_vertices;
  g.edges = edges;
  g.incidence = Matrix::Zero(num_vertices, static_cast<Index>(edges.size()));

  std::set<std::pair<Index, Index>> seen;
  for (std::size_t m = 0; m < edges.size(); ++m) {
    const auto [u, v] = edges[m];
    const std::string where = "edge " + std::to_string(m) + " (" + std::to_string(u) + "," +
                              std::to_string(v) + ")";
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw InvalidArgument(where + ": vertex out of range [0," + std::to_string(num_vertices) + ")");
    if (u == v) throw InvalidArgument(where + ": self-loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw InvalidArgument(where + ": duplicate undirected edge");
    g.incidence(u, static_cast<Index>(m)) = 1;
    g.incidence(v, static_cast<Index>(m)) = -1;
  }
  g.laplacian = g.incidence * g.incidence.transpose();
  return g;
}

Scalar graph_tv_quadratic(const GraphTopology& topology, const Eigen::Ref<const Vector>& column) {
  require(column.size() == topology.num_vertices, "graph signal length does not match vertex count");
  return column.dot(topology.laplacian * column);
}

Matrix first_difference(Index t) {
  require(t >= 2, "first difference needs T >= 2");
  Matrix d = Matrix::Zero(t, t - 1);
  for (Index j = 0; j < t - 1; ++j) {
    d(j, j) = -1;
    d(j + 1, j) = 1;
  }
  return d;
}

Matrix second_difference(Index t) {
  require(t >= 3, "second difference needs T >= 3");
  Matrix d = Matrix::Zero(t, t - 2);
  for (Index j = 0; j < t - 2; ++j) {
    d(j, j) = 1;
    d(j + 1, j) = -2;
    d(j + 2, j) = 1;
  }
  return d;
}

TemporalOperators temporal_operators(Index t) {
  return {first_difference(t), second_difference(t)};
}

Matrix temporal_diff(const TimeVertexSignal& signal, int order) {
  require(order == 1 || order == 2, "difference order must be 1 or 2");
  const Matrix& x = signal.data();
  require(x.cols() > order, "T must exceed the difference order");
  const Index width = x.cols() - order;
  if (order == 1) return x.rightCols(width) - x.leftCols(width);
  return x.leftCols(width) - 2 * x.middleCols(1, width) + x.rightCols(width);
}

JointGradient joint_gradient(const TimeVertexSignal& signal, const GraphTopology& topology) {
  require(signal.num_vertices() == topology.num_vertices, "signal rows do not match graph vertices");
  JointGradient grad;
  grad.graph = topology.incidence.transpose() * signal.data();
  grad.time = signal.num_steps() >= 2 ? temporal_diff(signal, 1) : Matrix(signal.num_vertices(), 0);

  Scalar best = 0;
  const Index rows = std::max(grad.graph.rows(), grad.time.rows());
  const Index cols = std::max(grad.graph.cols(), grad.time.cols());
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const bool in_g = i < grad.graph.rows() && j < grad.graph.cols();
      const bool in_t = i < grad.time.rows() && j < grad.time.cols();
      const Scalar g = in_g ? grad.graph(i, j) : 0;
      const Scalar t = in_t ? grad.time(i, j) : 0;
      best = std::max(best, std::hypot(g, t));
    }
  }
  grad.max_norm = best;
  return grad;
}

SmoothnessReport smoothness_report(const TimeVertexSignal& signal, const GraphTopology& topology) {
  require(signal.num_steps() >= 3, "smoothness report needs T >= 3");
  require(signal.num_vertices() == topology.num_vertices, "signal rows do not match graph vertices");
  const Matrix& x = signal.data();

  SmoothnessReport r;
  // Column-wise xᵀLx; clamp tiny negative round-off.
  const Vector quad = (x.array() * (topology.laplacian * x).array()).colwise().sum().transpose();
  r.max_graph_quadratic = std::max<Scalar>(0, quad.cwiseAbs().maxCoeff());
  r.max_gradient_norm = joint_gradient(signal, topology).max_norm;
  r.max_second_diff = temporal_diff(signal, 2).cwiseAbs().maxCoeff();
  r.bound_c = std::max({r.max_graph_quadratic, r.max_gradient_norm, r.max_second_diff});
  return r;
}

}  // namespace ftvgs
