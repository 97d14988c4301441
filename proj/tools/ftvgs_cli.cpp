#include "ftvgs/analysis.hpp"
#include "ftvgs/bounds.hpp"
#include "ftvgs/io.hpp"
#include "ftvgs/lssp.hpp"
#include "ftvgs/sampling.hpp"
#include "ftvgs/spectral.hpp"
#include "ftvgs/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ftvgs;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Collects provenance while a command runs and writes it next to the main
/// output as `<out>.manifest.json`.
struct Manifest {
  std::string command;
  ordered_json flags = ordered_json::object();
  ordered_json seeds = ordered_json::array();
  ordered_json inputs = ordered_json::array();
  ordered_json outputs = ordered_json::array();
  ordered_json notes = ordered_json::array();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& main_output) const {
    ordered_json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["flags"] = flags;
    j["seeds"] = seeds;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    if (!notes.empty()) j["notes"] = notes;
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    j["duration_seconds"] = elapsed;
    write_text(manifest_path(main_output), j.dump(2) + "\n");
  }

  static fs::path manifest_path(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }
};

fs::path sibling(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

/// --seed wins; otherwise FTVGS_SEED; otherwise 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("FTVGS_SEED")) {
    std::uint64_t v = 0;
    std::istringstream in(env);
    if (!(in >> v) || !in.eof()) throw InvalidArgument(std::string("FTVGS_SEED is not an unsigned integer: ") + env);
    return v;
  }
  return 0;
}

std::vector<Scalar> parse_scalar_list(const std::string& text, const std::string& what) {
  std::vector<Scalar> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse " + what + " value '" + field + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(what + " list is empty");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    const auto dash = field.find('-');
    try {
      if (dash != std::string::npos) {
        const std::uint64_t lo = std::stoull(field.substr(0, dash));
        const std::uint64_t hi = std::stoull(field.substr(dash + 1));
        if (hi < lo) throw InvalidArgument("seed range '" + field + "' is decreasing");
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      } else {
        out.push_back(std::stoull(field));
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse seed '" + field + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("seed list is empty");
  return out;
}

SpectralBases load_or_build_bases(const GraphTopology& topology, Index t, const std::string& cache_dir,
                                  Manifest& manifest) {
  if (cache_dir.empty()) return make_bases(topology, t);
  const fs::path dir(cache_dir);
  const fs::path pg = dir / "psi_g.csv", pt = dir / "psi_t.csv", ev = dir / "eigenvalues_g.csv";
  if (fs::exists(pg) && fs::exists(pt) && fs::exists(ev)) {
    SpectralBases b;
    b.psi_g = read_matrix_csv(pg);
    b.psi_t = read_matrix_csv(pt);
    b.eigenvalues_g = read_matrix_csv(ev).col(0);
    if (b.num_vertices() != topology.num_vertices || b.num_steps() != t || b.eigenvalues_g.size() != b.num_vertices())
      throw IoError(dir.string() + ": cached bases do not match the graph and signal sizes");
    manifest.inputs.push_back(dir.string());
    return b;
  }
  SpectralBases b = make_bases(topology, t);
  fs::create_directories(dir);
  write_matrix_csv(pg, b.psi_g);
  write_matrix_csv(pt, b.psi_t);
  write_matrix_csv(ev, b.eigenvalues_g);
  manifest.outputs.push_back(dir.string());
  return b;
}

GraphTopology read_graph(const std::string& path, Index n, Manifest& manifest) {
  manifest.inputs.push_back(path);
  try {
    return build_incidence(n, read_edge_csv(path));
  } catch (const InvalidArgument& err) {
    throw InvalidArgument(path + ": " + err.what());
  }
}

void emit_json(const ordered_json& j, const std::string& out, Manifest& manifest) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  write_text(out, j.dump(2) + "\n");
  manifest.outputs.push_back(out);
  manifest.write(out);
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  SynthSpec spec;
  std::optional<std::uint64_t> seed;
  bool random_rows = false;
  std::string out;
};

void add_synth_flags(CLI::App* cmd, SynthArgs& a) {
  cmd->add_option("--n", a.spec.n, "number of vertices")->capture_default_str();
  cmd->add_option("--t", a.spec.t, "number of time steps")->capture_default_str();
  cmd->add_option("--nonzero-rows", a.spec.num_nonzero_rows, "nonzero spectral rows")->capture_default_str();
  cmd->add_option("--bandwidth-min", a.spec.bandwidth_min)->capture_default_str();
  cmd->add_option("--bandwidth-max", a.spec.bandwidth_max)->capture_default_str();
  cmd->add_flag("--random-rows", a.random_rows, "place the nonzero rows at random instead of lowest frequencies");
}

int run_synth(SynthArgs& a, Manifest& m) {
  a.spec.seed = resolve_seed(a.seed);
  a.spec.rows = a.random_rows ? SpectrumRows::Random : SpectrumRows::Lowest;
  a.spec.validate();
  const SynthInstance inst = make_synthetic_instance(a.spec);
  const fs::path out(a.out);
  const fs::path fj = sibling(out, "_fj.csv"), graph = sibling(out, "_graph.csv");
  write_matrix_csv(out, inst.data.signal.data());
  write_matrix_csv(fj, inst.data.f_j);
  write_edge_csv(graph, inst.topology.edges);
  m.flags = {{"n", a.spec.n},
             {"t", a.spec.t},
             {"nonzero_rows", a.spec.num_nonzero_rows},
             {"bandwidth_min", a.spec.bandwidth_min},
             {"bandwidth_max", a.spec.bandwidth_max},
             {"random_rows", a.random_rows}};
  m.seeds.push_back(a.spec.seed);
  m.outputs = {out.string(), fj.string(), graph.string()};
  m.write(out);
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string input;
  bool skip_header = false;
  Scalar alpha_rc = 1;
  Scalar alpha_sub = 1;
  std::optional<std::uint64_t> seed;
  std::string mode = "without";
  std::string out;
};

int run_sample(SampleArgs& a, Manifest& m) {
  const ReplacementMode mode = parse_replacement_mode(a.mode);
  const std::uint64_t seed = resolve_seed(a.seed);
  const TimeVertexSignal x(read_matrix_csv(a.input, a.skip_header));
  const SampleSet s = subset_random_sample(x, a.alpha_rc, a.alpha_sub, seed, mode);
  m.flags = {{"alpha_rc", a.alpha_rc}, {"alpha_sub", a.alpha_sub}, {"mode", to_string(mode)},
             {"skip_header", a.skip_header}};
  m.seeds.push_back(seed);
  m.inputs.push_back(a.input);
  write_text(a.out, to_json(s).dump() + "\n");
  m.outputs.push_back(a.out);
  m.write(a.out);
  std::cout << "alpha_total " << format_scalar(s.alpha_total()) << " (" << s.entries.size() << " samples)\n";
  return 0;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::string samples;
  std::string graph;
  std::string method = "lssp";
  std::string config;
  std::string out;
  std::string diagnostics;
  std::string truth;
  bool skip_header = false;
  std::string bases_cache;
};

int run_reconstruct(ReconstructArgs& a, Manifest& m) {
  const Method method = parse_method(a.method);
  LsspConfig config;
  if (!a.config.empty()) {
    m.inputs.push_back(a.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text(a.config));
    } catch (const nlohmann::json::parse_error& err) {
      throw IoError(a.config + ": " + err.what());
    }
    config = lssp_config_from_json(j);
  }
  if (method == Method::Lssp && a.graph.empty()) throw InvalidArgument("--graph is required for method lssp");

  m.inputs.push_back(a.samples);
  nlohmann::json sj;
  try {
    sj = nlohmann::json::parse(read_text(a.samples));
  } catch (const nlohmann::json::parse_error& err) {
    throw IoError(a.samples + ": " + err.what());
  }
  const SampleSet samples = [&] {
    try {
      return sample_set_from_json(sj);
    } catch (const IoError& err) {
      throw IoError(a.samples + ": " + err.what());
    }
  }();

  ReconstructionResult res;
  if (method == Method::Lssp) {
    const GraphTopology topology = read_graph(a.graph, samples.n, m);
    const SpectralBases bases = load_or_build_bases(topology, samples.t, a.bases_cache, m);
    res = lssp_reconstruct(samples, bases, config);
  } else {
    res = svt_baseline(samples);
  }

  write_matrix_csv(a.out, res.estimate);
  m.outputs.push_back(a.out);
  if (!a.diagnostics.empty()) {
    std::string text;
    for (const auto& note : res.notes) text += "# " + note + "\n";
    text += format_diagnostics_csv(res.diagnostics);
    write_text(a.diagnostics, text);
    m.outputs.push_back(a.diagnostics);
  }
  for (const auto& note : res.notes) {
    std::cerr << note << "\n";
    m.notes.push_back(note);
  }

  m.flags = {{"method", to_string(method)}, {"skip_header", a.skip_header}};
  if (method == Method::Lssp) m.flags["lssp"] = to_json(config);
  m.flags["converged"] = res.converged;
  m.flags["outer_iterations"] = res.outer_iterations;
  m.seeds.push_back(samples.seed);
  if (!a.truth.empty()) {
    m.inputs.push_back(a.truth);
    const Matrix truth = read_matrix_csv(a.truth, a.skip_header);
    if (truth.rows() != res.estimate.rows() || truth.cols() != res.estimate.cols())
      throw InvalidArgument(a.truth + ": shape does not match the sample set");
    const Scalar err = nrmse(truth, res.estimate);
    std::cout << "nrmse " << format_scalar(err) << "\n";
    m.flags["nrmse"] = err;
  }
  m.write(a.out);
  return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string input;
  bool skip_header = false;
  bool params = false;
  MatrixProperties props;
  BoundParams bp;
  Index size_i = 0;
  Index size_j = 0;
  std::string out;
};

int run_bounds(BoundsArgs& a, Manifest& m) {
  if (a.params == !a.input.empty()) throw InvalidArgument("give exactly one of --input and --params");
  a.bp.validate();
  MatrixProperties props = a.props;
  if (!a.params) {
    m.inputs.push_back(a.input);
    const TimeVertexSignal x(read_matrix_csv(a.input, a.skip_header));
    const SvdSummary svd = thin_svd_summary(x);
    if (!svd.incoherence_defined()) throw InvalidArgument(a.input + ": signal has rank 0");
    props = MatrixProperties::from(svd);
  }
  const Index size_i = a.size_i > 0 ? a.size_i : props.rows;
  const Index size_j = a.size_j > 0 ? a.size_j : props.cols;
  const BoundsReport report = theorem_min_samples(props, size_i, size_j, a.bp);
  m.flags = {{"params", a.params},   {"delta", a.bp.delta}, {"epsilon", a.bp.epsilon},
             {"eta", a.bp.eta},      {"beta", a.bp.beta},   {"size_i", size_i},
             {"size_j", size_j},     {"skip_header", a.skip_header}};
  emit_json(to_json(report), a.out, m);
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string input;
  bool skip_header = false;
  Index size_i = 0;
  Index size_j = 0;
  Index trials = 200;
  Scalar eta = 0.5;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::string out;
};

int run_verify(VerifyArgs& a, Manifest& m) {
  const std::uint64_t seed = resolve_seed(a.seed);
  m.inputs.push_back(a.input);
  const TimeVertexSignal x(read_matrix_csv(a.input, a.skip_header));
  const RankPreservationResult rp = mc_rank_preservation(x, a.size_i, a.trials, seed, kDefaultRankTol, a.jobs);
  ordered_json j;
  j["size_i"] = a.size_i;
  j["trials"] = rp.trials;
  j["seed"] = seed;
  j["target_rank"] = rp.target_rank;
  j["successes"] = rp.successes;
  j["probability"] = rp.probability;
  if (a.size_j > 0) {
    const CoherenceTransferResult ct =
        mc_coherence_transfer(x, a.size_i, a.size_j, a.trials, seed, a.eta, kDefaultRankTol, a.jobs);
    ordered_json c;
    c["size_j"] = a.size_j;
    c["eta"] = a.eta;
    c["max_u_norm"] = ct.max_u_norm;
    c["max_v_norm"] = ct.max_v_norm;
    c["u_bound"] = ct.bounds.u_bound;
    c["v_bound"] = ct.bounds.v_bound;
    c["fraction_within"] = ct.fraction_within;
    c["predicted_success_prob"] = ct.bounds.success_prob;
    c["informative"] = ct.bounds.informative;
    c["used_trials"] = ct.used_trials;
    c["excluded_trials"] = ct.excluded_trials;
    j["coherence"] = std::move(c);
  }
  m.flags = {{"size_i", a.size_i}, {"size_j", a.size_j}, {"trials", a.trials},
             {"eta", a.eta},       {"jobs", a.jobs},     {"skip_header", a.skip_header}};
  m.seeds.push_back(seed);
  emit_json(j, a.out, m);
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string input;
  std::string graph;
  bool skip_header = false;
  std::string ratios = "0.6,0.7,0.8,0.9";
  std::string sub_ratios;
  std::string seeds = "0-9";
  std::string methods = "lssp,svt";
  std::string mode = "without";
  std::string config;
  SynthArgs synth;
  std::size_t jobs = 1;
  std::string out;
};

int run_sweep_cmd(SweepArgs& a, Manifest& m) {
  SweepOptions opt;
  const auto rc = parse_scalar_list(a.ratios, "ratio");
  const auto sub = a.sub_ratios.empty() ? rc : parse_scalar_list(a.sub_ratios, "sub-ratio");
  if (sub.size() != rc.size()) throw InvalidArgument("--sub-ratios must have as many entries as --ratios");
  for (std::size_t k = 0; k < rc.size(); ++k) opt.ratios.push_back({rc[k], sub[k]});
  opt.seeds = parse_seed_list(a.seeds);
  opt.methods.clear();
  {
    std::istringstream in(a.methods);
    std::string name;
    while (std::getline(in, name, ',')) opt.methods.push_back(parse_method(name));
  }
  if (opt.methods.empty()) throw InvalidArgument("method list is empty");
  opt.mode = parse_replacement_mode(a.mode);
  opt.jobs = a.jobs;
  if (!a.config.empty()) {
    m.inputs.push_back(a.config);
    opt.lssp = lssp_config_from_json(nlohmann::json::parse(read_text(a.config)));
  }

  std::vector<SweepRow> rows;
  if (!a.input.empty()) {
    m.inputs.push_back(a.input);
    const TimeVertexSignal x(read_matrix_csv(a.input, a.skip_header));
    const bool needs_graph =
        std::find(opt.methods.begin(), opt.methods.end(), Method::Lssp) != opt.methods.end();
    if (needs_graph && a.graph.empty()) throw InvalidArgument("--graph is required when lssp is swept on --input");
    SpectralBases bases;
    if (a.graph.empty()) {
      bases.psi_g = Matrix::Identity(x.num_vertices(), x.num_vertices());
      bases.eigenvalues_g = Vector::Zero(x.num_vertices());
      bases.psi_t = harmonic_basis(x.num_steps());
    } else {
      bases = make_bases(read_graph(a.graph, x.num_vertices(), m), x.num_steps());
    }
    rows = run_sweep(x, bases, opt);
  } else {
    a.synth.spec.rows = a.synth.random_rows ? SpectrumRows::Random : SpectrumRows::Lowest;
    a.synth.spec.validate();
    const SynthSpec base = a.synth.spec;
    rows = run_sweep(
        [base](std::uint64_t seed) {
          SynthSpec s = base;
          s.seed = seed;
          return make_synthetic_instance(s);
        },
        opt);
    m.flags["synthetic"] = {{"n", base.n},
                            {"t", base.t},
                            {"nonzero_rows", base.num_nonzero_rows},
                            {"bandwidth_min", base.bandwidth_min},
                            {"bandwidth_max", base.bandwidth_max},
                            {"random_rows", a.synth.random_rows}};
  }

  write_text(a.out, format_sweep_csv(rows));
  m.outputs.push_back(a.out);
  m.flags["ratios"] = a.ratios;
  m.flags["sub_ratios"] = a.sub_ratios.empty() ? a.ratios : a.sub_ratios;
  m.flags["methods"] = a.methods;
  m.flags["mode"] = to_string(opt.mode);
  m.flags["jobs"] = a.jobs;
  m.flags["lssp"] = to_json(opt.lssp);
  for (auto s : opt.seeds) m.seeds.push_back(s);
  for (const auto& r : rows)
    for (const auto& e : r.errors) m.notes.push_back(to_string(r.method) + " at " + format_scalar(r.alpha_rc) + "/" +
                                                     format_scalar(r.alpha_sub) + ": " + e);
  m.write(a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset random sampling and reconstruction of time-vertex graph signals"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic signal, its joint spectrum and graph");
  add_synth_flags(c_synth, synth);
  c_synth->add_option("--seed", synth.seed, "random seed (default: FTVGS_SEED or 0)");
  c_synth->add_option("--out", synth.out, "signal CSV; _fj.csv and _graph.csv are written beside it")->required();

  SampleArgs sample;
  auto* c_sample = app.add_subcommand("sample", "subset random sampling");
  c_sample->add_option("--input", sample.input, "signal CSV")->required();
  c_sample->add_flag("--skip-header", sample.skip_header, "ignore the first line of the CSV");
  c_sample->add_option("--alpha-rc", sample.alpha_rc, "row/column selection ratio")->capture_default_str();
  c_sample->add_option("--alpha-sub", sample.alpha_sub, "entry ratio inside the subset")->capture_default_str();
  c_sample->add_option("--seed", sample.seed, "random seed (default: FTVGS_SEED or 0)");
  c_sample->add_option("--mode", sample.mode, "without | with (replacement)")->capture_default_str();
  c_sample->add_option("--out", sample.out, "sample set JSON")->required();

  ReconstructArgs rec;
  auto* c_rec = app.add_subcommand("reconstruct", "recover the signal from a sample set");
  c_rec->add_option("--samples", rec.samples, "sample set JSON")->required();
  c_rec->add_option("--graph", rec.graph, "edge list CSV (required for lssp)");
  c_rec->add_option("--method", rec.method, "lssp | svt")->capture_default_str();
  c_rec->add_option("--config", rec.config, "LSSP parameters as JSON");
  c_rec->add_option("--out", rec.out, "estimate CSV")->required();
  c_rec->add_option("--diagnostics", rec.diagnostics, "per-iteration CSV");
  c_rec->add_option("--truth", rec.truth, "ground truth CSV; prints NRMSE");
  c_rec->add_flag("--skip-header", rec.skip_header, "the truth CSV has a header line");
  c_rec->add_option("--bases-cache", rec.bases_cache, "directory holding cached basis CSVs");

  BoundsArgs bnd;
  auto* c_bnd = app.add_subcommand("bounds", "evaluate sampling bounds");
  c_bnd->add_option("--input", bnd.input, "signal CSV; properties from its SVD");
  c_bnd->add_flag("--params", bnd.params, "take the matrix properties from flags");
  c_bnd->add_flag("--skip-header", bnd.skip_header);
  c_bnd->add_option("--rank", bnd.props.rank)->capture_default_str();
  c_bnd->add_option("--kappa", bnd.props.kappa)->capture_default_str();
  c_bnd->add_option("--mu1", bnd.props.mu1)->capture_default_str();
  c_bnd->add_option("--mu2", bnd.props.mu2)->capture_default_str();
  c_bnd->add_option("--n-rows", bnd.props.rows)->capture_default_str();
  c_bnd->add_option("--n-cols", bnd.props.cols)->capture_default_str();
  c_bnd->add_option("--delta", bnd.bp.delta)->capture_default_str();
  c_bnd->add_option("--epsilon", bnd.bp.epsilon)->capture_default_str();
  c_bnd->add_option("--eta", bnd.bp.eta)->capture_default_str();
  c_bnd->add_option("--beta", bnd.bp.beta)->capture_default_str();
  c_bnd->add_option("--size-i", bnd.size_i, "selected rows (default N)");
  c_bnd->add_option("--size-j", bnd.size_j, "selected columns (default T)");
  c_bnd->add_option("--out", bnd.out, "report JSON (default stdout)");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Monte-Carlo check of the selection lemmas");
  c_ver->add_option("--input", ver.input, "signal CSV")->required();
  c_ver->add_flag("--skip-header", ver.skip_header);
  c_ver->add_option("--size-i", ver.size_i, "selected rows")->required();
  c_ver->add_option("--size-j", ver.size_j, "selected columns; enables the coherence check");
  c_ver->add_option("--trials", ver.trials)->capture_default_str();
  c_ver->add_option("--eta", ver.eta)->capture_default_str();
  c_ver->add_option("--seed", ver.seed, "random seed (default: FTVGS_SEED or 0)");
  c_ver->add_option("--jobs", ver.jobs)->capture_default_str();
  c_ver->add_option("--out", ver.out, "result JSON (default stdout)");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "NRMSE over sampling ratios and seeds");
  c_sw->add_option("--input", sw.input, "signal CSV (default: synthetic instance per seed)");
  c_sw->add_option("--graph", sw.graph, "edge list CSV for --input");
  c_sw->add_flag("--skip-header", sw.skip_header);
  c_sw->add_option("--ratios", sw.ratios, "comma-separated alpha_rc values")->capture_default_str();
  c_sw->add_option("--sub-ratios", sw.sub_ratios, "comma-separated alpha_sub values (default: --ratios)");
  c_sw->add_option("--seeds", sw.seeds, "comma-separated seeds or a-b ranges")->capture_default_str();
  c_sw->add_option("--methods", sw.methods)->capture_default_str();
  c_sw->add_option("--mode", sw.mode)->capture_default_str();
  c_sw->add_option("--config", sw.config, "LSSP parameters as JSON");
  add_synth_flags(c_sw, sw.synth);
  c_sw->add_option("--jobs", sw.jobs)->capture_default_str();
  c_sw->add_option("--out", sw.out, "sweep CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  Manifest manifest;
  try {
    manifest.command = app.get_subcommands().front()->get_name();
    if (*c_synth) return run_synth(synth, manifest);
    if (*c_sample) return run_sample(sample, manifest);
    if (*c_rec) return run_reconstruct(rec, manifest);
    if (*c_bnd) return run_bounds(bnd, manifest);
    if (*c_ver) return run_verify(ver, manifest);
    if (*c_sw) return run_sweep_cmd(sw, manifest);
  } catch (const InvalidArgument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
