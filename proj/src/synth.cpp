#include "ftvgs/synth.hpp"

#include "ftvgs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ftvgs {

void SynthSpec::validate() const {
  require(n >= 1 && t >= 1, "synthetic signal needs n >= 1 and t >= 1");
  require(num_nonzero_rows >= 1 && num_nonzero_rows <= n, "num_nonzero_rows must lie in [1, n]");
  require(bandwidth_min >= 1 && bandwidth_min <= bandwidth_max && bandwidth_max <= t,
          "bandwidths must satisfy 1 <= bandwidth_min <= bandwidth_max <= t");
}

namespace {

bool connected(Index n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Index> todo;
  todo.push(0);
  seen[0] = 1;
  Index reached = 1;
  while (!todo.empty()) {
    const Index u = todo.front();
    todo.pop();
    for (Index v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        todo.push(v);
      }
    }
  }
  return reached == n;
}

constexpr std::uint64_t kSpectrumStream = 0x9E3779B97F4A7C15ULL;

}  // namespace

GraphTopology random_connected_graph(Index n, std::uint64_t seed) {
  require(n >= 1, "graph needs at least one vertex");
  if (n == 1) return build_incidence(1, {});
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar prob = std::min<Scalar>(1, 2 * std::log(nn) / nn);
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Edge> edges;
    for (Index u = 0; u < n; ++u)
      for (Index v = u + 1; v < n; ++v)
        if (rng.uniform01() < prob) edges.emplace_back(u, v);
    if (connected(n, edges)) return build_incidence(n, edges);
  }
  throw SolverError("could not draw a connected random graph");
}

SyntheticSignal generate_synthetic(const SynthSpec& spec, const SpectralBases& bases) {
  spec.validate();
  require(bases.num_vertices() == spec.n && bases.num_steps() == spec.t, "bases do not match the synthetic spec");

  Rng rng(spec.seed ^ kSpectrumStream);
  SyntheticSignal out;
  if (spec.rows == SpectrumRows::Lowest) {
    for (Index i = 0; i < spec.num_nonzero_rows; ++i) out.support_rows.push_back(i);
  } else {
    out.support_rows = rng.choose(spec.n, spec.num_nonzero_rows);
    std::sort(out.support_rows.begin(), out.support_rows.end());
  }

  out.f_j = Matrix::Zero(spec.n, spec.t);
  const Index span = spec.bandwidth_max - spec.bandwidth_min + 1;
  for (Index row : out.support_rows) {
    const Index b = spec.bandwidth_min + rng.uniform_index(span);
    out.bandwidths.push_back(b);
    for (Index j = 0; j < b; ++j) out.f_j(row, j) = rng.normal();
  }
  out.signal = TimeVertexSignal(synthesize_joint(out.f_j, bases));
  return out;
}

SynthInstance make_synthetic_instance(const SynthSpec& spec) {
  spec.validate();
  SynthInstance inst;
  inst.topology = random_connected_graph(spec.n, spec.seed);
  inst.bases = make_bases(inst.topology, spec.t);
  inst.data = generate_synthetic(spec, inst.bases);
  return inst;
}

Scalar nrmse(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& estimate) {
  require(reference.rows() == estimate.rows() && reference.cols() == estimate.cols(),
          "nrmse: shapes differ");
  const Scalar denom = reference.norm();
  require(denom > 0, "nrmse: zero reference");
  return (reference - estimate).norm() / denom;
}

std::vector<Scalar> row_nrmse(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& estimate,
                              const std::vector<Index>& rows) {
  require(reference.rows() == estimate.rows() && reference.cols() == estimate.cols(),
          "row_nrmse: shapes differ");
  std::vector<Scalar> out;
  out.reserve(rows.size());
  for (Index i : rows) out.push_back(nrmse(reference.row(i), estimate.row(i)));
  return out;
}

std::string to_string(Method m) { return m == Method::Lssp ? "lssp" : "svt"; }

Method parse_method(const std::string& name) {
  if (name == "lssp") return Method::Lssp;
  if (name == "svt") return Method::Svt;
  throw InvalidArgument("unknown method '" + name + "' (expected lssp or svt)");
}

std::vector<SweepRow> run_sweep(const InstanceSource& source, const SweepOptions& options) {
  require(!options.ratios.empty(), "sweep needs at least one ratio");
  require(!options.seeds.empty(), "sweep needs at least one seed");
  require(!options.methods.empty(), "sweep needs at least one method");
  for (const auto& r : options.ratios)
    require(r.alpha_rc > 0 && r.alpha_rc <= 1 && r.alpha_sub > 0 && r.alpha_sub <= 1,
            "sweep ratios must lie in (0, 1]");

  const std::size_t n_methods = options.methods.size();
  const std::size_t n_ratios = options.ratios.size();
  const std::size_t n_seeds = options.seeds.size();

  struct Cell {
    Scalar nrmse = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar alpha_total = std::numeric_limits<Scalar>::quiet_NaN();
    std::string error;
  };
  // Index: (method, ratio, seed). Instances are rebuilt per (ratio, seed)
  // task so each cell depends only on its own inputs.
  std::vector<Cell> cells(n_methods * n_ratios * n_seeds);
  parallel_for(n_ratios * n_seeds, options.jobs, [&](std::size_t task) {
    const std::size_t ri = task / n_seeds;
    const std::size_t si = task % n_seeds;
    const std::uint64_t seed = options.seeds[si];
    auto cell_at = [&](std::size_t mi) -> Cell& { return cells[(mi * n_ratios + ri) * n_seeds + si]; };
    try {
      const SynthInstance inst = source(seed);
      const SampleSet samples = subset_random_sample(inst.data.signal, options.ratios[ri].alpha_rc,
                                                     options.ratios[ri].alpha_sub, seed, options.mode);
      for (std::size_t mi = 0; mi < n_methods; ++mi) {
        Cell& c = cell_at(mi);
        c.alpha_total = samples.alpha_total();
        try {
          const ReconstructionResult res = options.methods[mi] == Method::Lssp
                                               ? lssp_reconstruct(samples, inst.bases, options.lssp)
                                               : svt_baseline(samples, options.svt);
          c.nrmse = nrmse(inst.data.signal.data(), res.estimate);
        } catch (const std::exception& err) {
          c.error = err.what();
        }
      }
    } catch (const std::exception& err) {
      for (std::size_t mi = 0; mi < n_methods; ++mi) cell_at(mi).error = err.what();
    }
  });

  std::vector<SweepRow> rows;
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    for (std::size_t ri = 0; ri < n_ratios; ++ri) {
      SweepRow row;
      row.method = options.methods[mi];
      row.alpha_rc = options.ratios[ri].alpha_rc;
      row.alpha_sub = options.ratios[ri].alpha_sub;
      std::vector<Scalar> values;
      Scalar total_sum = 0;
      Index total_count = 0;
      for (std::size_t si = 0; si < n_seeds; ++si) {
        const Cell& c = cells[(mi * n_ratios + ri) * n_seeds + si];
        if (std::isfinite(c.alpha_total)) {
          total_sum += c.alpha_total;
          ++total_count;
        }
        if (c.error.empty() && std::isfinite(c.nrmse)) {
          values.push_back(c.nrmse);
        } else {
          ++row.failures;
          row.errors.push_back(c.error.empty() ? "non-finite NRMSE" : c.error);
        }
      }
      row.alpha_total = total_count > 0 ? total_sum / static_cast<Scalar>(total_count)
                                        : std::numeric_limits<Scalar>::quiet_NaN();
      row.seed_count = static_cast<Index>(values.size());
      if (values.empty()) {
        row.mean_nrmse = row.std_nrmse = std::numeric_limits<Scalar>::quiet_NaN();
      } else {
        Scalar sum = 0;
        for (Scalar v : values) sum += v;
        row.mean_nrmse = sum / static_cast<Scalar>(values.size());
        Scalar ss = 0;
        for (Scalar v : values) ss += (v - row.mean_nrmse) * (v - row.mean_nrmse);
        row.std_nrmse = values.size() > 1 ? std::sqrt(ss / static_cast<Scalar>(values.size() - 1)) : 0;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const TimeVertexSignal& signal, const SpectralBases& bases,
                                const SweepOptions& options) {
  require(bases.num_vertices() == signal.num_vertices() && bases.num_steps() == signal.num_steps(),
          "bases do not match the signal");
  SynthInstance fixed;
  fixed.bases = bases;
  fixed.data.signal = signal;
  return run_sweep([&fixed](std::uint64_t) { return fixed; }, options);
}

}  // namespace ftvgs
