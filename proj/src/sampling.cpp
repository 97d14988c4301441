#include "ftvgs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ftvgs {

Index Rng::uniform_index(Index n) {
  require(n >= 1, "uniform_index needs n >= 1");
  const auto range = static_cast<std::uint64_t>(n);
  // Reject the tail so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<Index>(x % range);
}

Scalar Rng::uniform01() { return static_cast<Scalar>(next() >> 11) * 0x1.0p-53; }

Scalar Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  Scalar u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0);
  const Scalar u2 = uniform01();
  const Scalar radius = std::sqrt(-2 * std::log(u1));
  const Scalar angle = 2 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<Index> Rng::choose(Index n, Index k) {
  require(k >= 0 && k <= n, "cannot choose more items than available");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const Index j = i + uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

Index round_half_away(Scalar x) {
  const Scalar mag = std::floor(std::abs(x) + 0.5 + 1e-9);
  return static_cast<Index>(x < 0 ? -mag : mag);
}

std::string to_string(ReplacementMode mode) {
  return mode == ReplacementMode::With ? "with" : "without";
}

ReplacementMode parse_replacement_mode(const std::string& text) {
  if (text == "without") return ReplacementMode::Without;
  if (text == "with") return ReplacementMode::With;
  throw InvalidArgument("replacement mode must be 'with' or 'without', got '" + text + "'");
}

Scalar SampleSet::alpha_total() const {
  return static_cast<Scalar>(entries.size()) / (static_cast<Scalar>(n) * static_cast<Scalar>(t));
}

Index SampleSet::distinct_count() const { return sample_mask(*this).count(); }

SampleSet subset_random_sample(const TimeVertexSignal& signal, Scalar alpha_rc, Scalar alpha_sub,
                               std::uint64_t seed, ReplacementMode mode) {
  require(alpha_rc > 0 && alpha_rc <= 1, "alpha_rc must lie in (0, 1]");
  require(alpha_sub > 0 && alpha_sub <= 1, "alpha_sub must lie in (0, 1]");
  const Index n = signal.num_vertices();
  const Index t = signal.num_steps();
  const Index size_i = round_half_away(alpha_rc * static_cast<Scalar>(n));
  const Index size_j = round_half_away(alpha_rc * static_cast<Scalar>(t));
  require(size_i >= 1, "row selection is empty after rounding");
  require(size_j >= 1, "column selection is empty after rounding");

  SampleSet s;
  s.n = n;
  s.t = t;
  s.alpha_rc = alpha_rc;
  s.alpha_sub = alpha_sub;
  s.seed = seed;
  s.mode = mode;

  Rng rng(seed);
  s.rows = rng.choose(n, size_i);
  s.cols = rng.choose(t, size_j);
  std::sort(s.rows.begin(), s.rows.end());
  std::sort(s.cols.begin(), s.cols.end());

  const Index sub_size = size_i * size_j;
  const Index count = round_half_away(alpha_sub * static_cast<Scalar>(sub_size));
  std::vector<Index> picks;
  if (mode == ReplacementMode::Without) {
    picks = rng.choose(sub_size, count);
  } else {
    picks.reserve(static_cast<std::size_t>(count));
    for (Index k = 0; k < count; ++k) picks.push_back(rng.uniform_index(sub_size));
  }
  std::sort(picks.begin(), picks.end());

  const Matrix& x = signal.data();
  s.entries.reserve(picks.size());
  for (Index p : picks) {
    const Index i = s.rows[static_cast<std::size_t>(p / size_j)];
    const Index j = s.cols[static_cast<std::size_t>(p % size_j)];
    s.entries.push_back({i, j, x(i, j)});
  }
  return s;
}

void validate(const SampleSet& s) {
  require(s.n >= 1 && s.t >= 1, "sample set dimensions must be positive");
  require(std::is_sorted(s.rows.begin(), s.rows.end()) &&
              std::adjacent_find(s.rows.begin(), s.rows.end()) == s.rows.end(),
          "row set must be sorted and distinct");
  require(std::is_sorted(s.cols.begin(), s.cols.end()) &&
              std::adjacent_find(s.cols.begin(), s.cols.end()) == s.cols.end(),
          "column set must be sorted and distinct");
  require(s.rows.empty() || (s.rows.front() >= 0 && s.rows.back() < s.n), "row index out of range");
  require(s.cols.empty() || (s.cols.front() >= 0 && s.cols.back() < s.t), "column index out of range");
  for (const auto& e : s.entries) {
    require(std::binary_search(s.rows.begin(), s.rows.end(), e.row) &&
                std::binary_search(s.cols.begin(), s.cols.end(), e.col),
            "sample (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                ") lies outside the selected submatrix");
    require(std::isfinite(e.value), "sample value is not finite");
  }
}

Mask sample_mask(const SampleSet& s) {
  Mask mask = Mask::Constant(s.n, s.t, false);
  for (const auto& e : s.entries) mask(e.row, e.col) = true;
  return mask;
}

Matrix project_onto_samples(const Eigen::Ref<const Matrix>& m, const Mask& mask) {
  require(m.rows() == mask.rows() && m.cols() == mask.cols(), "matrix shape does not match mask");
  return mask.select(m, Matrix::Zero(m.rows(), m.cols()));
}

Matrix project_onto_complement(const Eigen::Ref<const Matrix>& m, const Mask& mask) {
  require(m.rows() == mask.rows() && m.cols() == mask.cols(), "matrix shape does not match mask");
  return mask.select(Matrix::Zero(m.rows(), m.cols()), m);
}

ObservedData observed_matrix(const SampleSet& s) {
  ObservedData d{Matrix::Zero(s.n, s.t), Mask::Constant(s.n, s.t, false)};
  for (const auto& e : s.entries) {
    d.values(e.row, e.col) = e.value;
    d.mask(e.row, e.col) = true;
  }
  return d;
}

}  // namespace ftvgs
