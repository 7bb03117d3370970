#include "neurorf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace neurorf {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

double as_real(const json& v, const char* what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + ": expected a number");
  return v.get<double>();
}

long long as_int(const json& v, const char* what) {
  if (!v.is_number_integer())
    throw ConfigError(std::string(what) + ": expected an integer");
  return v.get<long long>();
}

std::uint64_t as_uint(const json& v, const char* what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return static_cast<std::uint64_t>(v.get<long long>());
  throw ConfigError(std::string(what) + ": expected a nonnegative integer");
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  const json doc = parse_json(text, "instance");
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("X") ||
      !doc.contains("y"))
    throw ConfigError("instance: required fields are d, X, y");
  if (!doc["d"].is_number_integer() || doc["d"].get<long>() < 1)
    throw ConfigError("instance: d must be a positive integer");
  const long d = doc["d"].get<long>();
  const auto& X = doc["X"];
  const auto& y = doc["y"];
  if (!X.is_array() || X.empty() || !y.is_array() || y.size() != X.size())
    throw ConfigError("instance: X and y must be same-length nonempty arrays");

  InstanceFile out;
  const long n = static_cast<long>(X.size());
  out.data.X.resize(n, d);
  out.data.y.resize(n);
  for (long i = 0; i < n; ++i) {
    const auto& row = X[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long>(row.size()) != d)
      throw ConfigError("instance: X rows must have length d");
    for (long j = 0; j < d; ++j)
      out.data.X(i, j) = as_real(row[static_cast<std::size_t>(j)], "instance X");
    out.data.y[i] = as_real(y[static_cast<std::size_t>(i)], "instance y");
  }
  out.data.validate();

  if (doc.contains("theta_gt")) {
    const auto& tg = doc["theta_gt"];
    if (!tg.is_array() || static_cast<long>(tg.size()) != d)
      throw ConfigError("instance: theta_gt must have length d");
    Eigen::VectorXd t(d);
    for (long j = 0; j < d; ++j)
      t[j] = as_real(tg[static_cast<std::size_t>(j)], "instance theta_gt");
    out.theta_gt = Model{t};
  }
  if (doc.contains("eps_inlier")) {
    const double eps = as_real(doc["eps_inlier"], "instance eps_inlier");
    if (eps < 0.0) throw ConfigError("instance: eps_inlier must be >= 0");
    out.eps_inlier = eps;
  }
  return out;
}

InstanceFile read_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

std::string instance_to_json(const Dataset& data, const Model* theta_gt,
                             const double* eps_inlier) {
  data.validate();
  json doc;
  doc["d"] = data.d();
  json X = json::array();
  for (Eigen::Index i = 0; i < data.N(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < data.d(); ++j) row.push_back(data.X(i, j));
    X.push_back(std::move(row));
  }
  doc["X"] = std::move(X);
  json yv = json::array();
  for (Eigen::Index i = 0; i < data.N(); ++i) yv.push_back(data.y[i]);
  doc["y"] = std::move(yv);
  if (theta_gt != nullptr) {
    json t = json::array();
    for (Eigen::Index j = 0; j < theta_gt->theta.size(); ++j)
      t.push_back(theta_gt->theta[j]);
    doc["theta_gt"] = std::move(t);
  }
  if (eps_inlier != nullptr) doc["eps_inlier"] = *eps_inlier;
  return doc.dump(2) + "\n";
}

void write_instance(const std::string& path, const Dataset& data,
                    const Model* theta_gt, const double* eps_inlier) {
  write_text_file(path, instance_to_json(data, theta_gt, eps_inlier));
}

CorrespondenceSet read_correspondences(const std::string& path) {
  std::istringstream in(read_text_file(path));
  CorrespondenceSet corrs;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    CorrespondenceSet::Pair p{};
    if (!(ls >> p.x >> p.y >> p.xp >> p.yp)) {
      std::ostringstream msg;
      msg << "correspondences: line " << lineno << " needs four reals";
      throw ConfigError(msg.str());
    }
    corrs.pairs.push_back(p);
  }
  corrs.validate();
  return corrs;
}

Eigen::Matrix3d read_homography(const std::string& path) {
  std::istringstream in(read_text_file(path));
  Eigen::Matrix3d H;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(in >> H(i, j)))
        throw ConfigError("homography file: expected nine reals");
  return H;
}

FileConfig parse_config(const std::string& text) {
  const json doc = parse_json(text, "config");
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  FileConfig cfg;
  const auto known = {"K",    "M",           "alpha",      "eps_inlier",
                      "seed", "divergence_cap", "beta",    "weight_bits",
                      "state_bits", "lfsr_bits"};
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config: unknown field '" + key + "'");
    (void)value;
  }
  if (doc.contains("K")) cfg.K = static_cast<long>(as_int(doc["K"], "config K"));
  if (doc.contains("M")) cfg.M = static_cast<long>(as_int(doc["M"], "config M"));
  if (doc.contains("alpha")) cfg.alpha = as_real(doc["alpha"], "config alpha");
  if (doc.contains("eps_inlier"))
    cfg.eps_inlier = as_real(doc["eps_inlier"], "config eps_inlier");
  if (doc.contains("seed")) cfg.seed = as_uint(doc["seed"], "config seed");
  if (doc.contains("divergence_cap"))
    cfg.divergence_cap = as_real(doc["divergence_cap"], "config divergence_cap");
  if (doc.contains("beta"))
    cfg.beta = static_cast<int>(as_int(doc["beta"], "config beta"));
  if (doc.contains("weight_bits"))
    cfg.weight_bits =
        static_cast<int>(as_int(doc["weight_bits"], "config weight_bits"));
  if (doc.contains("state_bits"))
    cfg.state_bits =
        static_cast<int>(as_int(doc["state_bits"], "config state_bits"));
  if (doc.contains("lfsr_bits"))
    cfg.lfsr_bits =
        static_cast<int>(as_int(doc["lfsr_bits"], "config lfsr_bits"));
  return cfg;
}

FileConfig read_config(const std::string& path) {
  return parse_config(read_text_file(path));
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kResultsHeader << "\n";
  for (const auto& r : rows) {
    char wt[32];
    std::snprintf(wt, sizeof(wt), "%.6f", r.wall_time);
    out << r.instance_id << "," << r.method << "," << r.psi << ","
        << format_real(r.normdist_or_auc) << "," << r.synaptic_ops << "," << wt
        << "\n";
  }
  return out.str();
}

void write_results_csv(const std::string& path,
                       const std::vector<ResultRow>& rows) {
  write_text_file(path, results_csv(rows));
}

std::string trace_csv_header(long d, bool fixed_point) {
  std::ostringstream out;
  out << "window,psi";
  for (long j = 0; j < d; ++j) out << ",theta_" << j;
  out << ",diverged";
  if (fixed_point) out << ",saturations,drift";
  return out.str();
}

std::string trace_csv(const FitResult& result, long d, bool fixed_point) {
  std::ostringstream out;
  out << trace_csv_header(d, fixed_point) << "\n";
  for (const auto& wt : result.trace) {
    out << wt.window << "," << wt.psi;
    for (long j = 0; j < d; ++j)
      out << ","
          << format_real(wt.theta.size() == d ? wt.theta[j] : 0.0);
    out << "," << (wt.diverged ? 1 : 0);
    if (fixed_point) out << "," << wt.saturations << "," << wt.shift_drift;
    out << "\n";
  }
  return out.str();
}

void write_trace_csv(const std::string& path, const FitResult& result, long d,
                     bool fixed_point) {
  write_text_file(path, trace_csv(result, d, fixed_point));
}

std::string op_counts_csv(const OpCounts& counts) {
  std::ostringstream out;
  out << kOpCountsHeader << "\n"
      << counts.synaptic_ops << "," << counts.neuron_updates << ","
      << counts.spikes << "\n";
  return out.str();
}

std::string grid_summary_csv(const std::vector<GridSummaryRow>& rows) {
  std::ostringstream out;
  out << kGridSummaryHeader << "\n";
  for (const auto& r : rows)
    out << r.N << "," << r.d << "," << format_real(r.eta) << "," << r.method
        << "," << r.trials << "," << format_real(r.mean_normdist) << ","
        << format_real(r.std_normdist) << "," << format_real(r.mean_psi)
        << "\n";
  return out.str();
}

void write_grid_summary_csv(const std::string& path,
                            const std::vector<GridSummaryRow>& rows) {
  write_text_file(path, grid_summary_csv(rows));
}

}  // namespace neurorf
