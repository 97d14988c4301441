#include "ftvgs/signal.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace ftvgs;

namespace {

Matrix rows_of(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

GraphTopology path(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return build_incidence(n, edges);
}

}  // namespace

TEST_CASE("signal rejects empty and non-finite data") {
  CHECK_THROWS_AS(TimeVertexSignal(Matrix(0, 3)), InvalidArgument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(TimeVertexSignal{bad}, InvalidArgument);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(TimeVertexSignal{bad}, InvalidArgument);
  const TimeVertexSignal ok(Matrix::Ones(3, 5));
  CHECK(ok.num_vertices() == 3);
  CHECK(ok.num_steps() == 5);
}

TEST_CASE("incidence of a single edge") {
  const GraphTopology g = build_incidence(2, {{0, 1}});
  CHECK(g.incidence.isApprox(rows_of({{1}, {-1}})));
  CHECK(g.laplacian.isApprox(rows_of({{1, -1}, {-1, 1}})));
  CHECK(g.num_edges() == 1);
}

TEST_CASE("path laplacian") {
  const GraphTopology g = path(3);
  CHECK(g.laplacian.diagonal().isApprox(Vector::Map(std::vector<double>{1, 2, 1}.data(), 3)));
  CHECK(g.laplacian(0, 1) == -1);
  CHECK(g.laplacian(1, 2) == -1);
  CHECK(g.laplacian(0, 2) == 0);
}

TEST_CASE("invalid edges are rejected with the edge index") {
  CHECK_THROWS_WITH_AS(build_incidence(3, {{0, 0}}), doctest::Contains("self-loop"), InvalidArgument);
  CHECK_THROWS_WITH_AS(build_incidence(3, {{0, 1}, {1, 0}}), doctest::Contains("edge 1"), InvalidArgument);
  CHECK_THROWS_AS(build_incidence(3, {{0, 3}}), InvalidArgument);
  CHECK_THROWS_AS(build_incidence(3, {{-1, 2}}), InvalidArgument);
}

TEST_CASE("incidence columns and laplacian invariants on a random graph") {
  std::mt19937_64 gen(11);
  std::bernoulli_distribution coin(0.3);
  std::vector<Edge> edges;
  const Index n = 12;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (coin(gen)) edges.emplace_back(coin(gen) ? u : v, coin(gen) ? v : u);
  // Orientation flips may create self-loops; drop them.
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  const GraphTopology g = build_incidence(n, edges);

  for (Index m = 0; m < g.num_edges(); ++m) {
    const auto col = g.incidence.col(m);
    CHECK((col.array() == 1).count() == 1);
    CHECK((col.array() == -1).count() == 1);
    CHECK((col.array() == 0).count() == n - 2);
  }
  CHECK(g.laplacian.isApprox(g.laplacian.transpose()));
  CHECK(g.laplacian.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.laplacian);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);

  // Quadratic form equals the sum of squared differences over edges.
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = gauss(gen);
    double direct = 0;
    for (const auto& [u, v] : edges) direct += (x(u) - x(v)) * (x(u) - x(v));
    CHECK(graph_tv_quadratic(g, x) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("graph total variation examples") {
  CHECK(graph_tv_quadratic(path(2), Vector::Map(std::vector<double>{1, 0}.data(), 2)) == doctest::Approx(1));
  CHECK(graph_tv_quadratic(path(3), Vector::Map(std::vector<double>{0, 1, 3}.data(), 3)) == doctest::Approx(5));
  CHECK(graph_tv_quadratic(path(5), Vector::Constant(5, 2.5)) == doctest::Approx(0));
  CHECK_THROWS_AS(graph_tv_quadratic(path(3), Vector::Zero(2)), InvalidArgument);
}

TEST_CASE("difference operator structure") {
  const TemporalOperators ops = temporal_operators(6);
  REQUIRE(ops.d1.rows() == 6);
  REQUIRE(ops.d1.cols() == 5);
  REQUIRE(ops.d2.cols() == 4);
  for (Index j = 0; j < 5; ++j) {
    CHECK(ops.d1(j, j) == -1);
    CHECK(ops.d1(j + 1, j) == 1);
    CHECK(ops.d1.col(j).cwiseAbs().sum() == 2);
  }
  for (Index j = 0; j < 4; ++j) {
    CHECK(ops.d2(j, j) == 1);
    CHECK(ops.d2(j + 1, j) == -2);
    CHECK(ops.d2(j + 2, j) == 1);
    CHECK(ops.d2.col(j).cwiseAbs().sum() == 4);
  }
  // Constants vanish under D1, affine rows under D2.
  Matrix affine(3, 6);
  for (Index j = 0; j < 6; ++j) affine.col(j) << 2.0, 1.0 + 0.5 * j, -3.0 * j + 7;
  CHECK((Matrix::Constant(3, 6, 4.2) * ops.d1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((affine * ops.d2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(second_difference(2), InvalidArgument);
  CHECK_THROWS_AS(first_difference(1), InvalidArgument);
}

TEST_CASE("temporal differences") {
  const TimeVertexSignal ramp(rows_of({{1, 2, 3, 4}}));
  CHECK(temporal_diff(ramp, 1).isApprox(rows_of({{1, 1, 1}})));
  CHECK(temporal_diff(ramp, 2).cwiseAbs().maxCoeff() == 0);
  CHECK(temporal_diff(TimeVertexSignal(rows_of({{1, 4, 9}})), 2)(0, 0) == doctest::Approx(2));
  CHECK_THROWS_AS(temporal_diff(ramp, 3), InvalidArgument);

  std::mt19937_64 gen(3);
  std::normal_distribution<double> gauss;
  Matrix x(4, 9);
  for (Index i = 0; i < x.size(); ++i) x(i) = gauss(gen);
  const TimeVertexSignal s(x);
  CHECK(temporal_diff(s, 1).isApprox(x * first_difference(9), 1e-12));
  CHECK(temporal_diff(s, 2).isApprox(x * second_difference(9), 1e-12));
}

TEST_CASE("joint gradient") {
  const GraphTopology g2 = path(2);
  const JointGradient flat = joint_gradient(TimeVertexSignal(Matrix::Constant(2, 3, 1.5)), g2);
  CHECK(flat.max_norm == 0);

  const JointGradient a = joint_gradient(TimeVertexSignal(rows_of({{0, 1}, {0, 1}})), g2);
  CHECK(a.graph.cwiseAbs().maxCoeff() == 0);
  CHECK(a.time.isApprox(Matrix::Ones(2, 1)));
  CHECK(a.max_norm == doctest::Approx(1));

  const JointGradient b = joint_gradient(TimeVertexSignal(rows_of({{1, 1}, {0, 0}})), g2);
  CHECK(b.graph.isApprox(Matrix::Ones(1, 2)));
  CHECK(b.time.cwiseAbs().maxCoeff() == 0);
  CHECK(b.max_norm == doctest::Approx(1));

  // Both components active at (edge 0, step 0): norm is the hypotenuse.
  const JointGradient c = joint_gradient(TimeVertexSignal(rows_of({{3, 7}, {0, 4}})), g2);
  CHECK(c.max_norm == doctest::Approx(5));
}

TEST_CASE("smoothness report") {
  const GraphTopology g2 = path(2);
  CHECK(smoothness_report(TimeVertexSignal(Matrix::Constant(2, 4, -1)), g2).bound_c == 0);

  Matrix affine(2, 5);
  for (Index j = 0; j < 5; ++j) affine.col(j).setConstant(0.5 * j - 1);
  const SmoothnessReport ra = smoothness_report(TimeVertexSignal(affine), g2);
  CHECK(ra.max_second_diff == doctest::Approx(0));
  CHECK(ra.max_graph_quadratic == doctest::Approx(0));

  const SmoothnessReport rb = smoothness_report(TimeVertexSignal(rows_of({{0, 1, 2}, {0, 0, 0}})), g2);
  CHECK(rb.max_graph_quadratic == doctest::Approx(4));
  CHECK(rb.max_second_diff == doctest::Approx(0));
  CHECK(rb.bound_c >= rb.max_graph_quadratic);
}
