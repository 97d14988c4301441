#pragma once

#include "ftvgs/bounds.hpp"
#include "ftvgs/common.hpp"
#include "ftvgs/lssp.hpp"
#include "ftvgs/sampling.hpp"
#include "ftvgs/signal.hpp"
#include "ftvgs/synth.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace ftvgs {

inline constexpr const char* kVersion = "0.1.0";

/// File access or parse failure; messages carry the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to the same double.
std::string format_scalar(Scalar value);

/// Row-major CSV, one matrix row per line.
Matrix parse_matrix_csv(const std::string& text, bool skip_header = false);
std::string format_matrix_csv(const Eigen::Ref<const Matrix>& m);
Matrix read_matrix_csv(const std::filesystem::path& path, bool skip_header = false);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m);

/// "u,v" per line, 0-based, oriented u→v. Blank lines and lines starting
/// with '#' are ignored.
std::vector<Edge> parse_edge_csv(const std::string& text);
std::vector<Edge> read_edge_csv(const std::filesystem::path& path);
void write_edge_csv(const std::filesystem::path& path, const std::vector<Edge>& edges);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

nlohmann::ordered_json to_json(const SampleSet& s);
SampleSet sample_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const BoundsReport& r);

nlohmann::ordered_json to_json(const LsspConfig& c);
/// Unknown keys are rejected; missing keys keep their defaults.
LsspConfig lssp_config_from_json(const nlohmann::json& j);

std::string format_diagnostics_csv(const std::vector<IterationRecord>& records);
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ftvgs
