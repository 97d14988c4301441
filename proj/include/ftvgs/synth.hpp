#pragma once

#include "ftvgs/common.hpp"
#include "ftvgs/lssp.hpp"
#include "ftvgs/sampling.hpp"
#include "ftvgs/signal.hpp"
#include "ftvgs/spectral.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ftvgs {

enum class SpectrumRows { Lowest, Random };

/// Recipe for a synthetic signal X = Ψ_G F_J Ψ_Tᵀ: F_J has
/// `num_nonzero_rows` nonzero rows, each supported on its first b columns
/// with b uniform in [bandwidth_min, bandwidth_max] and standard normal
/// entries.
struct SynthSpec {
  Index n = 128;
  Index t = 128;
  Index num_nonzero_rows = 100;
  Index bandwidth_min = 28;
  Index bandwidth_max = 88;
  std::uint64_t seed = 0;
  SpectrumRows rows = SpectrumRows::Lowest;

  void validate() const;
};

struct SyntheticSignal {
  TimeVertexSignal signal;
  Matrix f_j;
  std::vector<Index> support_rows;  // sorted
  std::vector<Index> bandwidths;    // per support row
};

/// A complete synthetic instance: graph, bases and signal.
struct SynthInstance {
  GraphTopology topology;
  SpectralBases bases;
  SyntheticSignal data;
};

/// Erdős–Rényi graph with edge probability min(1, 2 ln N / N), redrawn until
/// connected.
GraphTopology random_connected_graph(Index n, std::uint64_t seed);

SyntheticSignal generate_synthetic(const SynthSpec& spec, const SpectralBases& bases);

/// Graph from random_connected_graph(spec.n, spec.seed), then the signal.
SynthInstance make_synthetic_instance(const SynthSpec& spec);

/// ‖reference - estimate‖_F / ‖reference‖_F. Throws InvalidArgument
/// ("zero reference") when the reference is zero.
Scalar nrmse(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& estimate);

/// NRMSE of each listed row on its own.
std::vector<Scalar> row_nrmse(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& estimate,
                              const std::vector<Index>& rows);

enum class Method { Lssp, Svt };
std::string to_string(Method m);
Method parse_method(const std::string& name);

struct SweepRatio {
  Scalar alpha_rc = 1;
  Scalar alpha_sub = 1;
};

struct SweepRow {
  Method method = Method::Lssp;
  Scalar alpha_rc = 0;
  Scalar alpha_sub = 0;
  Scalar alpha_total = 0;  // mean over seeds
  Index seed_count = 0;    // successful runs
  Scalar mean_nrmse = 0;
  Scalar std_nrmse = 0;    // sample standard deviation
  Index failures = 0;
  std::vector<std::string> errors;
};

struct SweepOptions {
  std::vector<SweepRatio> ratios;
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods{Method::Lssp};
  ReplacementMode mode = ReplacementMode::Without;
  LsspConfig lssp;
  SvtConfig svt;
  std::size_t jobs = 1;
};

/// Produces the ground truth and its bases for one seed.
using InstanceSource = std::function<SynthInstance(std::uint64_t seed)>;

/// For every (method, ratio): sample with each seed, reconstruct, and
/// average the NRMSE. Rows are ordered by method, then ratio. A failing cell
/// is counted in `failures` and does not stop the sweep.
std::vector<SweepRow> run_sweep(const InstanceSource& source, const SweepOptions& options);

/// Sweep over one fixed signal; seeds only change the sampling.
std::vector<SweepRow> run_sweep(const TimeVertexSignal& signal, const SpectralBases& bases,
                                const SweepOptions& options);

}  // namespace ftvgs
