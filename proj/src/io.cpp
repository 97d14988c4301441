#include "ftvgs/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ftvgs {

using nlohmann::ordered_json;

std::string format_scalar(Scalar value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

Scalar parse_scalar(const std::string& field, std::size_t line_no) {
  Scalar v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (field.empty() || res.ec != std::errc() || res.ptr != end)
    throw IoError("line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
  return v;
}

template <class Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) fn(trim(line), ++line_no);
}

template <class Fn>
auto with_path(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& err) {
    throw IoError(path.string() + ": " + err.what());
  }
}

}  // namespace

Matrix parse_matrix_csv(const std::string& text, bool skip_header) {
  std::vector<std::vector<Scalar>> rows;
  bool skipped = !skip_header;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    if (line.empty()) return;
    if (!skipped) {
      skipped = true;
      return;
    }
    std::vector<Scalar> row;
    for (const auto& field : split(line, ',')) row.push_back(parse_scalar(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(rows.front().size()) +
                    " columns, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  });
  if (rows.empty()) throw IoError("matrix CSV is empty");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

std::string format_matrix_csv(const Eigen::Ref<const Matrix>& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_scalar(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw IoError(path.string() + ": write failed");
}

Matrix read_matrix_csv(const std::filesystem::path& path, bool skip_header) {
  const std::string text = read_text(path);
  return with_path(path, [&] { return parse_matrix_csv(text, skip_header); });
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m) {
  write_text(path, format_matrix_csv(m));
}

std::vector<Edge> parse_edge_csv(const std::string& text) {
  std::vector<Edge> edges;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw IoError("line " + std::to_string(line_no) + ": expected 'u,v'");
    Index uv[2];
    for (int k = 0; k < 2; ++k) {
      const auto& f = fields[static_cast<std::size_t>(k)];
      const auto res = std::from_chars(f.data(), f.data() + f.size(), uv[k]);
      if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size())
        throw IoError("line " + std::to_string(line_no) + ": cannot parse vertex '" + f + "'");
    }
    edges.emplace_back(uv[0], uv[1]);
  });
  return edges;
}

std::vector<Edge> read_edge_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return with_path(path, [&] { return parse_edge_csv(text); });
}

void write_edge_csv(const std::filesystem::path& path, const std::vector<Edge>& edges) {
  std::string out;
  for (const auto& [u, v] : edges) out += std::to_string(u) + "," + std::to_string(v) + "\n";
  write_text(path, out);
}

ordered_json to_json(const SampleSet& s) {
  ordered_json j;
  j["n"] = s.n;
  j["t"] = s.t;
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  ordered_json entries = ordered_json::array();
  for (const auto& e : s.entries) entries.push_back(ordered_json::array({e.row, e.col, e.value}));
  j["entries"] = std::move(entries);
  j["alpha_rc"] = s.alpha_rc;
  j["alpha_sub"] = s.alpha_sub;
  j["alpha_total"] = s.alpha_total();
  j["seed"] = s.seed;
  j["mode"] = to_string(s.mode);
  return j;
}

SampleSet sample_set_from_json(const nlohmann::json& j) {
  try {
    SampleSet s;
    s.n = j.at("n").get<Index>();
    s.t = j.at("t").get<Index>();
    s.rows = j.at("rows").get<std::vector<Index>>();
    s.cols = j.at("cols").get<std::vector<Index>>();
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw IoError("each entry must be [i, j, value]");
      s.entries.push_back({e[0].get<Index>(), e[1].get<Index>(), e[2].get<Scalar>()});
    }
    s.alpha_rc = j.at("alpha_rc").get<Scalar>();
    s.alpha_sub = j.at("alpha_sub").get<Scalar>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.mode = parse_replacement_mode(j.at("mode").get<std::string>());
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& err) {
    throw IoError(std::string("invalid sample set JSON: ") + err.what());
  } catch (const InvalidArgument& err) {
    throw IoError(std::string("invalid sample set: ") + err.what());
  }
}

ordered_json to_json(const BoundsReport& r) {
  ordered_json j;
  j["rank"] = r.matrix.rank;
  j["kappa"] = r.matrix.kappa;
  j["mu1"] = r.matrix.mu1;
  j["mu2"] = r.matrix.mu2;
  j["n_rows"] = r.matrix.rows;
  j["n_cols"] = r.matrix.cols;
  j["delta"] = r.params.delta;
  j["epsilon"] = r.params.epsilon;
  j["eta"] = r.params.eta;
  j["beta"] = r.params.beta;
  j["size_i"] = r.size_i;
  j["size_j"] = r.size_j;
  j["min_rows"] = r.min_rows;
  j["min_cols"] = r.min_cols;
  j["min_samples"] = r.min_samples;
  j["min_samples_exact"] = r.min_samples_exact;
  j["lemma2_u_bound"] = r.lemma2_u_bound;
  j["lemma2_v_bound"] = r.lemma2_v_bound;
  j["lemma2_p"] = r.lemma2_p;
  j["lemma2_success_prob"] = r.lemma2_success_prob;
  j["lemma2_informative"] = r.lemma2_informative;
  j["theorem_success_prob"] = r.theorem_success_prob;
  j["theorem_informative"] = r.theorem_informative;
  j["feasible"] = r.feasible;
  return j;
}

ordered_json to_json(const LsspConfig& c) {
  ordered_json j;
  j["gamma_g"] = c.gamma_g;
  j["gamma_t"] = c.gamma_t;
  j["gamma_d"] = c.gamma_d;
  j["zeta"] = c.zeta;
  j["mu_init"] = c.mu_init;
  j["rho"] = c.rho;
  j["mu_max_factor"] = c.mu_max_factor;
  j["outer_iters"] = c.outer_iters;
  j["middle_iters"] = c.middle_iters;
  j["inner_iters"] = c.inner_iters;
  j["tol"] = c.tol;
  j["rank_surrogate_floor"] = c.rank_surrogate_floor;
  return j;
}

LsspConfig lssp_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw IoError("LSSP config must be a JSON object");
  LsspConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "gamma_g") c.gamma_g = value.get<Scalar>();
      else if (key == "gamma_t") c.gamma_t = value.get<Scalar>();
      else if (key == "gamma_d") c.gamma_d = value.get<Scalar>();
      else if (key == "zeta") c.zeta = value.get<Scalar>();
      else if (key == "mu_init") c.mu_init = value.get<Scalar>();
      else if (key == "rho") c.rho = value.get<Scalar>();
      else if (key == "mu_max_factor") c.mu_max_factor = value.get<Scalar>();
      else if (key == "outer_iters") c.outer_iters = value.get<Index>();
      else if (key == "middle_iters") c.middle_iters = value.get<Index>();
      else if (key == "inner_iters") c.inner_iters = value.get<Index>();
      else if (key == "tol") c.tol = value.get<Scalar>();
      else if (key == "rank_surrogate_floor") c.rank_surrogate_floor = value.get<Scalar>();
      else throw InvalidArgument("unknown LSSP config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& err) {
    throw InvalidArgument(std::string("invalid LSSP config value: ") + err.what());
  }
  c.validate();
  return c;
}

std::string format_diagnostics_csv(const std::vector<IterationRecord>& records) {
  std::string out =
      "outer,middle,objective,residual_graph,residual_time,residual_observed,observed_rmse,observed_max_error,mu\n";
  for (const auto& r : records) {
    out += std::to_string(r.outer) + "," + std::to_string(r.middle) + "," + format_scalar(r.objective) + "," +
           format_scalar(r.residual_graph) + "," + format_scalar(r.residual_time) + "," +
           format_scalar(r.residual_observed) + "," + format_scalar(r.observed_rmse) + "," +
           format_scalar(r.observed_max_error) + "," + format_scalar(r.mu) + "\n";
  }
  return out;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "method,alpha_rc,alpha_sub,alpha_total,seed_count,mean_nrmse,std_nrmse\n";
  for (const auto& r : rows) {
    out += to_string(r.method) + "," + format_scalar(r.alpha_rc) + "," + format_scalar(r.alpha_sub) + "," +
           format_scalar(r.alpha_total) + "," + std::to_string(r.seed_count) + "," + format_scalar(r.mean_nrmse) +
           "," + format_scalar(r.std_nrmse) + "\n";
  }
  return out;
}

}  // namespace ftvgs
