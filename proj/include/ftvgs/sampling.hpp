#pragma once

#include "ftvgs/common.hpp"
#include "ftvgs/signal.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ftvgs {

/// Seedable generator whose output depends only on the seed. The engine is
/// std::mt19937_64 (sequence fixed by the standard); the distributions are
/// implemented here because the standard library ones are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n).
  Index uniform_index(Index n);
  /// Uniform on [0, 1) with 53 random bits.
  Scalar uniform01();
  /// Standard normal (Box-Muller).
  Scalar normal();

  /// First k entries of a seeded Fisher-Yates shuffle of 0..n-1.
  std::vector<Index> choose(Index n, Index k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  Scalar spare_ = 0;
};

/// Round half away from zero. Values within 1e-9 of a half-integer count as
/// the half-integer so that e.g. 0.9·13225 rounds up.
Index round_half_away(Scalar x);

enum class ReplacementMode { Without, With };

std::string to_string(ReplacementMode mode);
ReplacementMode parse_replacement_mode(const std::string& text);

struct SampleEntry {
  Index row = 0;
  Index col = 0;
  Scalar value = 0;

  friend bool operator==(const SampleEntry&, const SampleEntry&) = default;
};

/// Output of subset random sampling: selected rows I, columns J and the
/// observed entries S ⊆ I×J. Entries are sorted by (row, col); in
/// with-replacement mode repeated draws appear repeatedly.
struct SampleSet {
  Index n = 0;
  Index t = 0;
  std::vector<Index> rows;
  std::vector<Index> cols;
  std::vector<SampleEntry> entries;
  Scalar alpha_rc = 1;
  Scalar alpha_sub = 1;
  std::uint64_t seed = 0;
  ReplacementMode mode = ReplacementMode::Without;

  /// |S| / (N·T), counting draws.
  Scalar alpha_total() const;
  /// Number of distinct observed positions.
  Index distinct_count() const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

/// Zero-filled observed matrix X_S with a separate mask, so an observed zero
/// differs from an unobserved entry.
struct ObservedData {
  Matrix values;
  Mask mask;
};

/// Uniform rows without replacement, uniform columns without replacement,
/// then Round(alpha_sub·|I|·|J|) entries of the submatrix.
SampleSet subset_random_sample(const TimeVertexSignal& signal, Scalar alpha_rc, Scalar alpha_sub,
                               std::uint64_t seed, ReplacementMode mode = ReplacementMode::Without);

/// Checks structural validity (indices in range, S ⊆ I×J, sorted sets).
void validate(const SampleSet& samples);

Mask sample_mask(const SampleSet& samples);

Matrix project_onto_samples(const Eigen::Ref<const Matrix>& m, const Mask& mask);
Matrix project_onto_complement(const Eigen::Ref<const Matrix>& m, const Mask& mask);

inline Matrix project_onto_samples(const Eigen::Ref<const Matrix>& m, const SampleSet& s) {
  require(m.rows() == s.n && m.cols() == s.t, "matrix shape does not match sample set");
  return project_onto_samples(m, sample_mask(s));
}
inline Matrix project_onto_complement(const Eigen::Ref<const Matrix>& m, const SampleSet& s) {
  require(m.rows() == s.n && m.cols() == s.t, "matrix shape does not match sample set");
  return project_onto_complement(m, sample_mask(s));
}

ObservedData observed_matrix(const SampleSet& samples);

}  // namespace ftvgs
