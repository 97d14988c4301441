#include "ftvgs/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

using namespace ftvgs;
namespace fs = std::filesystem;

TEST_CASE("scalar formatting round-trips") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(k % 40) - 20);
    CHECK(std::stod(format_scalar(v)) == v);
  }
  CHECK(format_scalar(0.1) == "0.1");
  CHECK(format_scalar(2) == "2");
  CHECK(format_scalar(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("matrix CSV round-trip") {
  const Matrix m = Matrix::Random(4, 3) * 1e3;
  const Matrix back = parse_matrix_csv(format_matrix_csv(m));
  CHECK(back == m);
  CHECK(parse_matrix_csv("a,b\n1,2\n3,4\n", true) == parse_matrix_csv("1,2\n3,4\n"));
  CHECK(parse_matrix_csv(" 1 , +2\r\n\n3,4").rows() == 2);
}

TEST_CASE("malformed matrix CSV") {
  CHECK_THROWS_WITH_AS(parse_matrix_csv("1,2\n3\n"), doctest::Contains("line 2"), IoError);
  CHECK_THROWS_WITH_AS(parse_matrix_csv("1,x\n"), doctest::Contains("'x'"), IoError);
  CHECK_THROWS_AS(parse_matrix_csv(""), IoError);
  CHECK_THROWS_AS(parse_matrix_csv("1,\n"), IoError);
}

TEST_CASE("edge CSV") {
  const auto edges = parse_edge_csv("# header\n0,1\n\n1,2\n");
  REQUIRE(edges.size() == 2);
  CHECK(edges[1] == Edge{1, 2});
  CHECK_THROWS_AS(parse_edge_csv("0,1,2\n"), IoError);
  CHECK_THROWS_AS(parse_edge_csv("0,a\n"), IoError);
}

TEST_CASE("file errors carry the path") {
  const fs::path missing = fs::temp_directory_path() / "ftvgs-does-not-exist.csv";
  CHECK_THROWS_WITH_AS(read_matrix_csv(missing), doctest::Contains(missing.string().c_str()), IoError);

  const fs::path bad = fs::temp_directory_path() / "ftvgs-bad-matrix.csv";
  write_text(bad, "1,2\n3\n");
  CHECK_THROWS_WITH_AS(read_matrix_csv(bad), doctest::Contains(bad.string().c_str()), IoError);
  fs::remove(bad);
}

TEST_CASE("sample set JSON round-trip") {
  const SampleSet s = subset_random_sample(TimeVertexSignal(Matrix::Random(9, 7)), 0.7, 0.6, 5);
  const auto j = to_json(s);
  CHECK(j["alpha_total"].get<double>() == doctest::Approx(s.alpha_total()));
  const SampleSet back = sample_set_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back == s);

  auto broken = nlohmann::json::parse(j.dump());
  broken["entries"].push_back({0, 0, 1.0});
  broken["rows"] = nlohmann::json::array({1, 2});
  CHECK_THROWS_AS(sample_set_from_json(broken), IoError);
  CHECK_THROWS_AS(sample_set_from_json(nlohmann::json::object()), IoError);
}

TEST_CASE("LSSP config JSON") {
  LsspConfig c;
  c.gamma_g = 0.3;
  c.outer_iters = 7;
  const LsspConfig back = lssp_config_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(back.gamma_g == 0.3);
  CHECK(back.outer_iters == 7);
  CHECK(lssp_config_from_json(nlohmann::json::parse(R"({"rho": 1.2})")).rho == 1.2);
  CHECK_THROWS_AS(lssp_config_from_json(nlohmann::json::parse(R"({"gama_g": 1})")), InvalidArgument);
  CHECK_THROWS_AS(lssp_config_from_json(nlohmann::json::parse(R"({"rho": 0.5})")), InvalidArgument);
  CHECK_THROWS_AS(lssp_config_from_json(nlohmann::json::parse(R"({"rho": "fast"})")), InvalidArgument);
}

TEST_CASE("bounds report JSON carries every field") {
  MatrixProperties m;
  m.rank = 2;
  m.rows = m.cols = 1000;
  const BoundsReport r = theorem_min_samples(m, 1000, 1000, {});
  const auto j = to_json(r);
  CHECK(j["min_rows"] == 89);
  for (const char* key : {"min_cols", "min_samples", "lemma2_p", "theorem_success_prob", "feasible"})
    CHECK(j.contains(key));
}

TEST_CASE("sweep CSV columns") {
  SweepRow row;
  row.alpha_rc = row.alpha_sub = 0.9;
  row.alpha_total = 0.7265;
  row.seed_count = 10;
  row.mean_nrmse = 0.25;
  row.std_nrmse = 0.01;
  const std::string csv = format_sweep_csv({row});
  CHECK(csv == "method,alpha_rc,alpha_sub,alpha_total,seed_count,mean_nrmse,std_nrmse\n"
               "lssp,0.9,0.9,0.7265,10,0.25,0.01\n");
}

TEST_CASE("diagnostics CSV") {
  IterationRecord r;
  r.outer = 1;
  r.middle = 2;
  r.mu = 0.5;
  const std::string csv = format_diagnostics_csv({r, r});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind("1,2,", csv.find('\n') + 1) != std::string::npos);
}
