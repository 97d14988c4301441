#include "ftvgs/io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace ftvgs;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() / ("ftvgs-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run run(const std::string& args, const std::string& env = "") const {
    const std::string out = path(".stdout"), err = path(".stderr");
    const std::string cmd = env + " \"" FTVGS_CLI_PATH "\" " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text(out);
    r.err = read_text(err);
    return r;
  }

 private:
  fs::path dir_;
  static inline int counter_ = 0;
};

nlohmann::json manifest_without_duration(const std::string& path) {
  auto j = nlohmann::json::parse(read_text(path));
  j.erase("duration_seconds");
  return j;
}

}  // namespace

TEST_CASE("synth writes a signal, spectrum, graph and manifest") {
  Workspace w;
  const Run r = w.run("synth --seed 7 --out " + w.path("x.csv"));
  REQUIRE(r.code == 0);
  const Matrix x = read_matrix_csv(w.path("x.csv"));
  CHECK(x.rows() == 128);
  CHECK(x.cols() == 128);
  CHECK(read_matrix_csv(w.path("x_fj.csv")).rows() == 128);
  CHECK(!read_edge_csv(w.path("x_graph.csv")).empty());
  const auto m = nlohmann::json::parse(read_text(w.path("x.csv.manifest.json")));
  CHECK(m["command"] == "synth");
  CHECK(m["seeds"][0] == 7);
  CHECK(m["version"] == kVersion);
  CHECK(m.contains("duration_seconds"));
}

TEST_CASE("usage and validation errors exit with 2") {
  Workspace w;
  CHECK(w.run("synth --bandwidth-min 90 --bandwidth-max 88 --out " + w.path("x.csv")).code == 2);
  CHECK(w.run("synth").code == 2);
  CHECK(w.run("frobnicate").code == 2);
  CHECK(w.run("bounds --params --eta 1").code == 2);
  CHECK(w.run("bounds").code == 2);
  CHECK(w.run("synth --n 8 --t 8 --nonzero-rows 4 --bandwidth-min 1 --bandwidth-max 3 --out " + w.path("x.csv"))
            .code == 0);
  CHECK(w.run("sample --input " + w.path("x.csv") + " --alpha-rc 1.5 --out " + w.path("s.json")).code == 2);
  CHECK(w.run("sample --input " + w.path("x.csv") + " --mode sometimes --out " + w.path("s.json")).code == 2);
  REQUIRE(w.run("sample --input " + w.path("x.csv") + " --out " + w.path("s.json")).code == 0);
  CHECK(w.run("reconstruct --samples " + w.path("s.json") + " --method icurc --out " + w.path("r.csv")).code == 2);
  CHECK(w.run("reconstruct --samples " + w.path("s.json") + " --method lssp --out " + w.path("r.csv")).code == 2);
  CHECK(w.run("sweep --seeds x --out " + w.path("sw.csv")).code == 2);
}

TEST_CASE("runtime errors exit with 1 and name the path") {
  Workspace w;
  const std::string missing = w.path("missing.csv");
  const Run r = w.run("sample --input " + missing + " --out " + w.path("s.json"));
  CHECK(r.code == 1);
  CHECK(r.err.find(missing) != std::string::npos);
  write_text(w.path("bad.csv"), "1,2\n3\n");
  CHECK(w.run("sample --input " + w.path("bad.csv") + " --out " + w.path("s.json")).code == 1);
}

TEST_CASE("sample reports the table ratios") {
  Workspace w;
  write_matrix_csv(w.path("m.csv"), Matrix::Ones(207, 512));
  REQUIRE(w.run("sample --input " + w.path("m.csv") + " --alpha-rc 0.7 --alpha-sub 0.7 --seed 3 --out " +
                w.path("s.json"))
              .code == 0);
  const auto j = nlohmann::json::parse(read_text(w.path("s.json")));
  CHECK(std::round(j["alpha_total"].get<double>() * 10000) / 10000 == doctest::Approx(0.3429));
  CHECK(j["entries"].size() == 36337);

  REQUIRE(w.run("sample --input " + w.path("m.csv") + " --alpha-rc 1 --alpha-sub 1 --out " + w.path("f.json")).code ==
          0);
  CHECK(nlohmann::json::parse(read_text(w.path("f.json")))["entries"].size() == 207 * 512);
}

TEST_CASE("seed falls back to the environment") {
  Workspace w;
  write_matrix_csv(w.path("m.csv"), Matrix::Random(12, 10));
  REQUIRE(w.run("sample --input " + w.path("m.csv") + " --alpha-rc 0.5 --seed 11 --out " + w.path("a.json")).code ==
          0);
  REQUIRE(w.run("sample --input " + w.path("m.csv") + " --alpha-rc 0.5 --out " + w.path("b.json"), "FTVGS_SEED=11")
              .code == 0);
  CHECK(read_text(w.path("a.json")) == read_text(w.path("b.json")));
  CHECK(w.run("sample --input " + w.path("m.csv") + " --out " + w.path("c.json"), "FTVGS_SEED=eleven").code == 2);
}

TEST_CASE("reconstruct from full observation and from a structurally missing sample") {
  Workspace w;
  REQUIRE(w.run("synth --n 16 --t 16 --nonzero-rows 10 --bandwidth-min 3 --bandwidth-max 8 --seed 2 --out " +
                w.path("x.csv"))
              .code == 0);
  REQUIRE(w.run("sample --input " + w.path("x.csv") + " --alpha-rc 1 --alpha-sub 1 --out " + w.path("full.json"))
              .code == 0);
  const Run full = w.run("reconstruct --samples " + w.path("full.json") + " --graph " + w.path("x_graph.csv") +
                         " --truth " + w.path("x.csv") + " --diagnostics " + w.path("d.csv") + " --bases-cache " +
                         w.path("bases") + " --out " + w.path("r.csv"));
  REQUIRE(full.code == 0);
  REQUIRE(full.out.rfind("nrmse ", 0) == 0);
  CHECK(std::stod(full.out.substr(6)) < 0.05);
  CHECK(fs::exists(w.path("bases/psi_g.csv")));
  CHECK(read_text(w.path("d.csv")).rfind("outer,middle,", 0) == 0);

  // Second run reads the cached bases and gives the same estimate.
  REQUIRE(w.run("reconstruct --samples " + w.path("full.json") + " --graph " + w.path("x_graph.csv") +
                " --bases-cache " + w.path("bases") + " --out " + w.path("r2.csv"))
              .code == 0);
  CHECK(read_text(w.path("r.csv")) == read_text(w.path("r2.csv")));

  REQUIRE(w.run("sample --input " + w.path("x.csv") + " --alpha-rc 0.75 --alpha-sub 0.9 --seed 4 --out " +
                w.path("part.json"))
              .code == 0);
  const Run svt = w.run("reconstruct --samples " + w.path("part.json") + " --method svt --diagnostics " +
                        w.path("svt.csv") + " --out " + w.path("svt_est.csv"));
  REQUIRE(svt.code == 0);
  CHECK(read_text(w.path("svt.csv")).find("structural-missing detected") != std::string::npos);
  const auto m = nlohmann::json::parse(read_text(w.path("svt_est.csv.manifest.json")));
  CHECK(m["notes"][0].get<std::string>().find("structural-missing detected") != std::string::npos);
}

TEST_CASE("bounds and verify") {
  Workspace w;
  const Run b = w.run("bounds --params --rank 2 --mu1 1 --mu2 1 --n-rows 1000 --n-cols 1000 --delta 0.1 --epsilon 0.5");
  REQUIRE(b.code == 0);
  const auto j = nlohmann::json::parse(b.out);
  CHECK(j["min_rows"] == 89);

  const Run small = w.run("bounds --params --rank 1 --n-rows 100 --n-cols 100 --eta 0 --size-i 50 --size-j 50 --out " +
                          w.path("b.json"));
  REQUIRE(small.code == 0);
  const auto k = nlohmann::json::parse(read_text(w.path("b.json")));
  CHECK(k["min_samples"] == 164232);
  CHECK(k["feasible"] == false);
  CHECK(fs::exists(w.path("b.json.manifest.json")));

  write_matrix_csv(w.path("m.csv"), Matrix::Random(9, 6));
  const Run v = w.run("verify --input " + w.path("m.csv") + " --size-i 9 --trials 20 --size-j 6");
  REQUIRE(v.code == 0);
  const auto vj = nlohmann::json::parse(v.out);
  CHECK(vj["probability"] == 1.0);
  CHECK(vj["coherence"]["fraction_within"].get<double>() >= 0);

  REQUIRE(w.run("bounds --input " + w.path("m.csv")).code == 0);
}

TEST_CASE("sweep produces one row per ratio and method") {
  Workspace w;
  write_text(w.path("cfg.json"), R"({"outer_iters": 1, "middle_iters": 10})");
  REQUIRE(w.run("sweep --n 10 --t 10 --nonzero-rows 5 --bandwidth-min 1 --bandwidth-max 4 --ratios 0.6,0.7,0.8,0.9 "
                "--seeds 0-1 --methods lssp,svt --jobs 2 --config " +
                w.path("cfg.json") + " --out " + w.path("s.csv"))
              .code == 0);
  const std::string csv = read_text(w.path("s.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("every command is byte-identical across runs with the same seed") {
  Workspace w;
  const std::string synth = "synth --n 12 --t 12 --nonzero-rows 6 --bandwidth-min 2 --bandwidth-max 6 --seed 5 --out ";
  REQUIRE(w.run(synth + w.path("a.csv")).code == 0);
  REQUIRE(w.run(synth + w.path("b/a.csv")).code != 0);  // missing directory
  fs::create_directories(w.path("b"));
  REQUIRE(w.run(synth + w.path("b/a.csv")).code == 0);

  const auto same = [&](const std::string& a, const std::string& b) {
    CAPTURE(a);
    CHECK(read_text(a) == read_text(b));
  };
  same(w.path("a.csv"), w.path("b/a.csv"));
  same(w.path("a_fj.csv"), w.path("b/a_fj.csv"));
  same(w.path("a_graph.csv"), w.path("b/a_graph.csv"));

  // Remaining commands write to fixed names, twice.
  const std::vector<std::string> commands = {
      "sample --input " + w.path("a.csv") + " --alpha-rc 0.8 --alpha-sub 0.8 --seed 3 --out OUT.json",
      "reconstruct --samples " + w.path("run0/out.json") + " --graph " + w.path("a_graph.csv") +
          " --diagnostics OUT_diag.csv --out OUT.csv",
      "reconstruct --samples " + w.path("run0/out.json") + " --method svt --diagnostics OUT_svt.csv --out OUT_svt_est.csv",
      "bounds --input " + w.path("a.csv") + " --out OUT_bounds.json",
      "verify --input " + w.path("a.csv") + " --size-i 8 --size-j 8 --trials 30 --seed 4 --jobs 3 --out OUT_verify.json",
      "sweep --input " + w.path("a.csv") + " --graph " + w.path("a_graph.csv") +
          " --ratios 0.8,1 --seeds 1,2 --methods lssp,svt --jobs 2 --out OUT_sweep.csv",
  };
  for (int run = 0; run < 2; ++run) {
    const std::string dir = w.path("run" + std::to_string(run));
    fs::create_directories(dir);
    for (std::string cmd : commands) {
      for (std::size_t pos; (pos = cmd.find("OUT")) != std::string::npos;) cmd.replace(pos, 3, dir + "/out");
      // Both runs read the first run's sample set so inputs are identical.
      CAPTURE(cmd);
      REQUIRE(w.run(cmd).code == 0);
    }
  }
  for (const auto& entry : fs::directory_iterator(w.path("run0"))) {
    const std::string name = entry.path().filename().string();
    const std::string a = entry.path().string(), b = w.path("run1/" + name);
    CAPTURE(name);
    REQUIRE(fs::exists(b));
    if (name.ends_with(".manifest.json")) {
      auto ma = manifest_without_duration(a), mb = manifest_without_duration(b);
      // Paths differ only by the run directory.
      std::string sa = ma.dump(), sb = mb.dump();
      for (std::size_t pos; (pos = sb.find("run1")) != std::string::npos;) sb.replace(pos, 4, "run0");
      CHECK(sa == sb);
    } else {
      CHECK(read_text(a) == read_text(b));
    }
  }
}
