#pragma once

#include "ftvgs/common.hpp"

#include <utility>
#include <vector>

namespace ftvgs {

/// An N×T real matrix: row i is the time series on vertex i, column j the
/// graph signal at time j. Always non-empty and finite.
class TimeVertexSignal {
 public:
  TimeVertexSignal() = default;
  explicit TimeVertexSignal(Matrix data);

  const Matrix& data() const { return data_; }
  Index num_vertices() const { return data_.rows(); }
  Index num_steps() const { return data_.cols(); }

 private:
  Matrix data_;
};

using Edge = std::pair<Index, Index>;

/// Unweighted graph with an arbitrary but fixed orientation per edge.
/// `incidence` is N×M with +1 at the initial and -1 at the terminal vertex
/// of each edge; `laplacian` = incidence * incidenceᵀ.
struct GraphTopology {
  Index num_vertices = 0;
  std::vector<Edge> edges;
  Matrix incidence;
  Matrix laplacian;

  Index num_edges() const { return static_cast<Index>(edges.size()); }
};

/// First and second order forward-difference operators, applied from the
/// right: (X d1)(i,j) = X(i,j+1) - X(i,j).
struct TemporalOperators {
  Matrix d1;  // T×(T-1)
  Matrix d2;  // T×(T-2)
};

struct SmoothnessReport {
  Scalar max_graph_quadratic = 0;
  Scalar max_gradient_norm = 0;
  Scalar max_second_diff = 0;
  Scalar bound_c = 0;
};

/// Graph and time components of the joint gradient in their native shapes:
/// `graph` = Qᵀ X (M×T), `time` = X D1 (N×(T-1)).
///
/// The two components live on different index sets (edges vs. vertices).
/// `max_norm` stacks them per (i,j) only where (i,j) indexes both matrices;
/// entries covered by a single component contribute their absolute value.
struct JointGradient {
  Matrix graph;
  Matrix time;
  Scalar max_norm = 0;
};

/// Throws InvalidArgument naming the offending edge index on self-loops,
/// out-of-range endpoints, or duplicate undirected edges.
GraphTopology build_incidence(Index num_vertices, const std::vector<Edge>& edges);

/// xᵀ L x for one graph signal.
Scalar graph_tv_quadratic(const GraphTopology& topology, const Eigen::Ref<const Vector>& column);

TemporalOperators temporal_operators(Index t);
Matrix first_difference(Index t);
Matrix second_difference(Index t);

/// X D_order, order ∈ {1, 2}. Requires T > order.
Matrix temporal_diff(const TimeVertexSignal& signal, int order);

JointGradient joint_gradient(const TimeVertexSignal& signal, const GraphTopology& topology);

/// Requires T ≥ 3.
SmoothnessReport smoothness_report(const TimeVertexSignal& signal, const GraphTopology& topology);

}  // namespace ftvgs
