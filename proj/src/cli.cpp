#include "neurorf/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "neurorf/bench.hpp"
#include "neurorf/io.hpp"
#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"

namespace neurorf {

namespace {

constexpr const char* kEngineFloat = "snn-float";
constexpr const char* kEngineFixed = "snn-fixed";
constexpr const char* kEngineRansac = "ransac";

bool valid_engine(const std::string& e) {
  return e == kEngineFloat || e == kEngineFixed || e == kEngineRansac;
}

// Flag > config file > instance metadata > family default.
struct ParamOverrides {
  std::optional<long> K, M;
  std::optional<double> alpha, eps;
  std::optional<std::uint64_t> seed;
  std::optional<int> beta;
  std::optional<std::string> config_path;
};

struct ResolvedParams {
  SnnConfig snn;
  FixedPointConfig fp;
  RansacConfig rc;
  std::uint64_t seed = 0;
};

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag,
                        const FileConfig& file) {
  if (flag) return *flag;
  if (file.seed) return *file.seed;
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed " << seed << "\n";  // reproducibility from the log
  return seed;
}

ResolvedParams resolve_params(const std::string& engine,
                              const ParamOverrides& ov,
                              const std::optional<double>& instance_eps) {
  FileConfig file;
  if (ov.config_path) file = read_config(*ov.config_path);

  const bool fixed = engine == kEngineFixed;
  ResolvedParams p;
  p.snn.K = ov.K ? *ov.K : file.K ? *file.K : (fixed ? 100 : 300);
  p.snn.M = ov.M ? *ov.M : file.M ? *file.M : 200;
  p.snn.alpha = ov.alpha ? *ov.alpha : file.alpha ? *file.alpha : 0.02;
  p.snn.eps_inlier = ov.eps      ? *ov.eps
                     : file.eps_inlier ? *file.eps_inlier
                     : instance_eps    ? *instance_eps
                                       : (fixed ? 4.0 : 0.5);
  if (file.divergence_cap) p.snn.divergence_cap = *file.divergence_cap;
  p.seed = pick_seed(ov.seed, file);
  p.snn.seed = p.seed;

  const int beta = ov.beta ? *ov.beta : file.beta ? *file.beta : 10;
  p.fp = make_fixed_point_config(
      p.snn.alpha, beta, file.weight_bits ? *file.weight_bits : 8,
      file.state_bits ? *file.state_bits : 24,
      file.lfsr_bits ? *file.lfsr_bits : 16);

  p.rc.K = p.snn.K;
  p.rc.eps_inlier = p.snn.eps_inlier;
  p.rc.seed = p.seed;
  return p;
}

struct EngineOutcome {
  FitResult fit;
  bool fixed_point = false;
};

EngineOutcome run_engine(const std::string& engine, const Dataset& data,
                         const ResolvedParams& p, bool refine, bool timing) {
  const auto t0 = std::chrono::steady_clock::now();
  EngineOutcome out;
  if (engine == kEngineFloat) {
    out.fit = run_snn(data, p.snn);
    if (refine) out.fit = ls_refine(out.fit, data, p.snn.eps_inlier);
  } else if (engine == kEngineFixed) {
    out.fixed_point = true;
    const IntDataset qd = quantize_dataset(data, p.fp);
    out.fit = run_fixed(qd, p.snn, p.fp);
    if (refine) out.fit = ls_refine(out.fit, data, p.snn.eps_inlier);
  } else if (engine == kEngineRansac) {
    out.fit = ransac(data, p.rc);
    if (refine) out.fit = ls_refine(out.fit, data, p.rc.eps_inlier);
  } else {
    throw ConfigError("unknown engine: " + engine);
  }
  if (timing) {
    const auto t1 = std::chrono::steady_clock::now();
    out.fit.wall_time_seconds =
        std::chrono::duration<double>(t1 - t0).count();
  }
  return out;
}

std::string path_stem(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

double metric_or_nan(const std::optional<Model>& gt, const Model& est) {
  if (!gt) return std::numeric_limits<double>::quiet_NaN();
  return normalized_distance(*gt, est);
}

int cmd_fit(const std::string& instance_path, const std::string& engine,
            const ParamOverrides& ov, const std::string& out_prefix,
            bool want_trace, bool refine, bool timing) {
  const InstanceFile inst = read_instance(instance_path);
  const ResolvedParams p = resolve_params(engine, ov, inst.eps_inlier);
  const EngineOutcome r = run_engine(engine, inst.data, p, refine, timing);

  ResultRow row;
  row.instance_id = path_stem(instance_path);
  row.method = engine;
  row.psi = r.fit.psi_best;
  row.normdist_or_auc = metric_or_nan(inst.theta_gt, r.fit.theta_best);
  row.synaptic_ops = r.fit.op_counts.synaptic_ops;
  row.wall_time = r.fit.wall_time_seconds;
  write_results_csv(out_prefix + ".results.csv", {row});
  if (want_trace)
    write_trace_csv(out_prefix + ".trace.csv", r.fit, inst.data.d(),
                    r.fixed_point);

  std::cout << "psi " << r.fit.psi_best;
  if (inst.theta_gt)
    std::cout << "  normdist " << format_real(row.normdist_or_auc);
  std::cout << "\n";
  return 0;
}

int cmd_synth(const SyntheticSpec& spec, double eps, long count,
              const std::string& out_path) {
  for (long i = 0; i < count; ++i) {
    SyntheticSpec s = spec;
    s.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
    const LinearInstance inst = gen_linear_instance(s);
    std::string path = out_path;
    if (count > 1) {
      const auto dot = out_path.find_last_of('.');
      const std::string stem =
          dot == std::string::npos ? out_path : out_path.substr(0, dot);
      const std::string ext =
          dot == std::string::npos ? ".json" : out_path.substr(dot);
      path = stem + "_" + std::to_string(i) + ext;
    }
    write_instance(path, inst.data, &inst.theta_gt, &eps);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_line_fixed(long n, const std::vector<double>& etas, long instances,
                   long trials, const ParamOverrides& ov,
                   const std::string& out_prefix, bool timing) {
  ParamOverrides base = ov;
  if (!base.seed) base.seed = pick_seed(std::nullopt, FileConfig{});
  std::vector<ResultRow> rows;
  for (double eta : etas) {
    for (long i = 0; i < instances; ++i) {
      SyntheticSpec spec;
      spec.N = n;
      spec.d = 2;
      spec.eta_percent = eta;
      spec.integer_mode = true;
      spec.seed = derive_seed(derive_seed(*base.seed, 1000 + static_cast<std::uint64_t>(eta)),
                              static_cast<std::uint64_t>(i));
      const IntegerLineInstance inst = gen_integer_line_instance(spec);
      const Dataset real = inst.data.to_real();
      std::ostringstream id;
      id << "lineN" << n << "_eta" << eta << "_i" << i;
      for (long tr = 0; tr < trials; ++tr) {
        ParamOverrides run_ov = base;
        run_ov.seed = derive_seed(spec.seed, 7000 + static_cast<std::uint64_t>(tr));
        for (const char* engine : {kEngineFixed, kEngineRansac}) {
          const ResolvedParams p = resolve_params(engine, run_ov, std::nullopt);
          const EngineOutcome r = run_engine(engine, real, p, false, timing);
          ResultRow row;
          row.instance_id = id.str();
          row.method = engine;
          row.psi = r.fit.psi_best;
          row.normdist_or_auc =
              normalized_distance(inst.theta_gt, r.fit.theta_best);
          row.synaptic_ops = r.fit.op_counts.synaptic_ops;
          row.wall_time = r.fit.wall_time_seconds;
          rows.push_back(row);
        }
      }
    }
  }
  write_results_csv(out_prefix + ".results.csv", rows);
  std::cout << rows.size() << " rows -> " << out_prefix << ".results.csv\n";
  return 0;
}

int cmd_affine(const AffineSyntheticSpec& spec, long trials, double eps_px,
               double auc_threshold, const std::string& corr_path,
               const std::string& hgt_path, const ParamOverrides& ov,
               const std::string& out_prefix, bool timing) {
  ParamOverrides base = ov;
  if (!base.seed) base.seed = pick_seed(std::nullopt, FileConfig{});
  std::vector<ResultRow> rows;

  const auto run_pair = [&](const CorrespondenceSet& corrs,
                            const std::string& id, std::uint64_t seed,
                            double width, double height) {
    ParamOverrides run_ov = base;
    run_ov.seed = seed;
    {
      ResolvedParams p = resolve_params(kEngineFloat, run_ov, std::nullopt);
      const auto t0 = std::chrono::steady_clock::now();
      AffineFitOutcome o = fit_affine_snn(corrs, eps_px, p.snn, width, height,
                                          auc_threshold);
      ResultRow row{id, kEngineFloat, o.pair_psi, o.auc,
                    o.fit.op_counts.synaptic_ops, 0.0};
      if (timing)
        row.wall_time = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      rows.push_back(row);
    }
    {
      ResolvedParams p = resolve_params(kEngineRansac, run_ov, std::nullopt);
      const auto t0 = std::chrono::steady_clock::now();
      AffineFitOutcome o = fit_affine_ransac(corrs, eps_px, p.rc, width,
                                             height, auc_threshold);
      ResultRow row{id, kEngineRansac, o.pair_psi, o.auc,
                    o.fit.op_counts.synaptic_ops, 0.0};
      if (timing)
        row.wall_time = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      rows.push_back(row);
    }
  };

  if (!corr_path.empty()) {
    CorrespondenceSet corrs = read_correspondences(corr_path);
    if (!hgt_path.empty()) {
      corrs.H_gt = read_homography(hgt_path);
      corrs.has_H_gt = true;
    }
    double w = 0.0, h = 0.0;
    for (const auto& pr : corrs.pairs) {
      w = std::max({w, pr.x, pr.xp});
      h = std::max({h, pr.y, pr.yp});
    }
    run_pair(corrs, path_stem(corr_path), *base.seed, w, h);
  } else {
    for (long tr = 0; tr < trials; ++tr) {
      AffineSyntheticSpec s = spec;
      s.seed = derive_seed(*base.seed, 500 + static_cast<std::uint64_t>(tr));
      const AffineInstance inst = gen_affine_instance(s);
      std::ostringstream id;
      id << "affine_p" << spec.pairs << "_t" << tr;
      run_pair(inst.corrs, id.str(),
               derive_seed(s.seed, 1), spec.width, spec.height);
    }
  }
  write_results_csv(out_prefix + ".results.csv", rows);
  std::cout << rows.size() << " rows -> " << out_prefix << ".results.csv\n";
  return 0;
}

int cmd_compare(const std::string& instance_path,
                const std::vector<std::string>& engines,
                const ParamOverrides& ov, bool timing) {
  const InstanceFile inst = read_instance(instance_path);
  ParamOverrides base = ov;
  if (!base.seed) base.seed = pick_seed(std::nullopt, FileConfig{});
  std::vector<double> dists;
  for (const auto& engine : engines) {
    if (!valid_engine(engine)) throw ConfigError("unknown engine: " + engine);
    const ResolvedParams p = resolve_params(engine, base, inst.eps_inlier);
    const EngineOutcome r = run_engine(engine, inst.data, p, false, timing);
    const double nd = metric_or_nan(inst.theta_gt, r.fit.theta_best);
    dists.push_back(nd);
    std::cout << engine << ": psi " << r.fit.psi_best;
    if (inst.theta_gt) std::cout << "  normdist " << format_real(nd);
    std::cout << "\n";
  }
  if (engines.size() == 2 && inst.theta_gt)
    std::cout << "delta(" << engines[0] << "," << engines[1] << ") "
              << format_real(dists[0] - dists[1]) << "\n";
  return 0;
}

struct GridSpec {
  std::vector<GridCell> cells;
  long instances_per_cell = kGridInstancesPerCell;
  long trials = 10;
  std::vector<std::string> engines{kEngineFloat, kEngineRansac};
};

GridSpec parse_grid_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grid spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("grid spec: expected a JSON object");
  GridSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "cells") {
      if (!value.is_array() || value.empty())
        throw ConfigError("grid spec: cells must be a nonempty array");
      spec.cells.clear();
      for (const auto& c : value) {
        if (!c.is_object() || !c.contains("N") || !c.contains("d") ||
            !c.contains("eta"))
          throw ConfigError("grid spec: each cell needs N, d, eta");
        spec.cells.push_back({c["N"].get<long>(), c["d"].get<long>(),
                              c["eta"].get<double>()});
      }
    } else if (key == "instances_per_cell") {
      spec.instances_per_cell = value.get<long>();
    } else if (key == "trials") {
      spec.trials = value.get<long>();
    } else if (key == "engines") {
      if (!value.is_array()) throw ConfigError("grid spec: engines must be an array");
      spec.engines.clear();
      for (const auto& e : value) spec.engines.push_back(e.get<std::string>());
    } else {
      throw ConfigError("grid spec: unknown field '" + key + "'");
    }
  }
  if (spec.cells.empty()) spec.cells = default_difficulty_grid();
  if (spec.instances_per_cell < 1 || spec.trials < 1)
    throw ConfigError("grid spec: instances_per_cell and trials must be >= 1");
  for (const auto& e : spec.engines)
    if (!valid_engine(e)) throw ConfigError("grid spec: unknown engine " + e);
  return spec;
}

int cmd_grid(const std::optional<std::string>& spec_path,
             const std::optional<long>& trials_flag,
             const std::vector<std::string>& engines_flag,
             const ParamOverrides& ov, const std::string& out_prefix,
             bool timing) {
  GridSpec spec;
  if (spec_path) spec = parse_grid_spec(read_text_file(*spec_path));
  if (spec.cells.empty()) spec.cells = default_difficulty_grid();
  if (trials_flag) spec.trials = *trials_flag;
  if (!engines_flag.empty()) {
    spec.engines = engines_flag;
    for (const auto& e : spec.engines)
      if (!valid_engine(e)) throw ConfigError("unknown engine: " + e);
  }

  ParamOverrides base = ov;
  if (!base.seed) base.seed = pick_seed(std::nullopt, FileConfig{});

  std::vector<ResultRow> rows;
  std::vector<GridSummaryRow> summary;
  for (std::size_t ci = 0; ci < spec.cells.size(); ++ci) {
    const GridCell& cell = spec.cells[ci];
    std::vector<std::vector<double>> dists(spec.engines.size());
    std::vector<std::vector<double>> psis(spec.engines.size());
    for (long i = 0; i < spec.instances_per_cell; ++i) {
      SyntheticSpec sspec;
      sspec.N = cell.N;
      sspec.d = cell.d;
      sspec.eta_percent = cell.eta;
      sspec.seed = derive_seed(derive_seed(*base.seed, ci), 300 + static_cast<std::uint64_t>(i));
      const LinearInstance inst = gen_linear_instance(sspec);
      std::ostringstream id;
      id << "N" << cell.N << "_d" << cell.d << "_eta" << cell.eta << "_i" << i;
      for (long tr = 0; tr < spec.trials; ++tr) {
        ParamOverrides run_ov = base;
        run_ov.seed = derive_seed(sspec.seed, 9000 + static_cast<std::uint64_t>(tr));
        for (std::size_t ei = 0; ei < spec.engines.size(); ++ei) {
          const ResolvedParams p =
              resolve_params(spec.engines[ei], run_ov, std::nullopt);
          const EngineOutcome r =
              run_engine(spec.engines[ei], inst.data, p, false, timing);
          const double nd = normalized_distance(inst.theta_gt, r.fit.theta_best);
          dists[ei].push_back(nd);
          psis[ei].push_back(static_cast<double>(r.fit.psi_best));
          ResultRow row;
          row.instance_id = id.str();
          row.method = spec.engines[ei];
          row.psi = r.fit.psi_best;
          row.normdist_or_auc = nd;
          row.synaptic_ops = r.fit.op_counts.synaptic_ops;
          row.wall_time = r.fit.wall_time_seconds;
          rows.push_back(row);
        }
      }
    }
    for (std::size_t ei = 0; ei < spec.engines.size(); ++ei) {
      GridSummaryRow s;
      s.N = cell.N;
      s.d = cell.d;
      s.eta = cell.eta;
      s.method = spec.engines[ei];
      s.trials = static_cast<long>(dists[ei].size());
      double mean = 0.0;
      for (double v : dists[ei]) mean += v;
      mean /= static_cast<double>(dists[ei].size());
      double var = 0.0;
      for (double v : dists[ei]) var += (v - mean) * (v - mean);
      var /= static_cast<double>(dists[ei].size());
      s.mean_normdist = mean;
      s.std_normdist = std::sqrt(var);
      double mp = 0.0;
      for (double v : psis[ei]) mp += v;
      s.mean_psi = mp / static_cast<double>(psis[ei].size());
      summary.push_back(s);
    }
    if (spec.engines.size() == 2) {
      GridSummaryRow s = summary[summary.size() - 2];
      s.method = "delta";
      s.mean_normdist = summary[summary.size() - 2].mean_normdist -
                        summary[summary.size() - 1].mean_normdist;
      s.std_normdist = 0.0;
      s.mean_psi = summary[summary.size() - 2].mean_psi -
                   summary[summary.size() - 1].mean_psi;
      summary.push_back(s);
    }
  }
  write_results_csv(out_prefix + ".results.csv", rows);
  write_grid_summary_csv(out_prefix + ".summary.csv", summary);
  std::cout << rows.size() << " rows -> " << out_prefix << ".results.csv\n"
            << summary.size() << " rows -> " << out_prefix << ".summary.csv\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Consensus-maximizing robust fitting: spiking-network engines "
               "and a classical baseline"};
  app.require_subcommand(1);

  ParamOverrides ov;
  bool timing = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--k", ov.K, "hypothesis iterations");
    cmd->add_option("--m", ov.M, "gradient steps per iteration");
    cmd->add_option("--alpha", ov.alpha, "learning rate");
    cmd->add_option("--eps", ov.eps, "inlier threshold");
    cmd->add_option("--beta", ov.beta, "fixed-point shift exponent");
    cmd->add_option("--seed", ov.seed, "master seed");
    cmd->add_option("--config", ov.config_path, "JSON config file");
    cmd->add_flag("--time", timing, "record wall-clock time in result rows");
  };

  // fit
  auto* fit = app.add_subcommand("fit", "fit one instance file");
  std::string fit_instance, fit_engine = kEngineFloat, fit_out = "fit";
  bool fit_trace = false, fit_refine = false;
  fit->add_option("--instance", fit_instance, "instance JSON file")->required();
  fit->add_option("--engine", fit_engine, "snn-float | snn-fixed | ransac")
      ->check(CLI::IsMember({kEngineFloat, kEngineFixed, kEngineRansac}));
  fit->add_option("--out", fit_out, "output file prefix");
  fit->add_flag("--trace", fit_trace, "also write the per-window trace CSV");
  fit->add_flag("--refine", fit_refine, "LS refinement over final inliers");
  add_common(fit);

  // synth
  auto* synth = app.add_subcommand("synth", "generate synthetic instances");
  SyntheticSpec synth_spec;
  double synth_eps = 0.5;
  long synth_count = 1;
  std::string synth_out = "instance.json";
  synth->add_option("--n", synth_spec.N, "points");
  synth->add_option("--d", synth_spec.d, "model dimension");
  synth->add_option("--eta", synth_spec.eta_percent, "outlier percentage");
  synth->add_option("--sigma-inlier", synth_spec.sigma_inlier, "inlier noise");
  synth->add_option("--sigma-outlier", synth_spec.sigma_outlier,
                    "outlier noise");
  synth->add_option("--eps", synth_eps, "eps_inlier stored in the instance");
  synth->add_option("--count", synth_count, "number of instances");
  synth->add_option("--seed", synth_spec.seed, "generator seed");
  synth->add_option("--out", synth_out, "output path");

  // line-fixed
  auto* linef = app.add_subcommand(
      "line-fixed", "integer line-fitting protocol, fixed-point vs baseline");
  long lf_n = 20, lf_instances = 5, lf_trials = 10;
  std::vector<double> lf_etas{10, 20, 30, 40, 50};
  std::string lf_out = "line_fixed";
  linef->add_option("--n", lf_n, "points per instance");
  linef->add_option("--etas", lf_etas, "outlier percentages")->delimiter(',');
  linef->add_option("--instances", lf_instances, "instances per eta");
  linef->add_option("--trials", lf_trials, "engine trials per instance");
  linef->add_option("--out", lf_out, "output file prefix");
  add_common(linef);

  // affine
  auto* affine = app.add_subcommand(
      "affine", "affine registration: synthetic instances or a file");
  AffineSyntheticSpec af_spec;
  long af_trials = 1;
  double af_eps_px = 2.0, af_auc_threshold = 10.0;
  std::string af_corr, af_hgt, af_out = "affine";
  affine->add_option("--pairs", af_spec.pairs, "correspondences per instance");
  affine->add_option("--outlier-frac", af_spec.outlier_fraction,
                     "outlier fraction");
  affine->add_option("--sigma", af_spec.sigma_noise, "inlier pixel noise");
  affine->add_option("--width", af_spec.width, "image width");
  affine->add_option("--height", af_spec.height, "image height");
  affine->add_option("--trials", af_trials, "synthetic instances");
  affine->add_option("--eps-px", af_eps_px, "pixel inlier threshold");
  affine->add_option("--auc-threshold", af_auc_threshold,
                     "corner-error threshold for the AUC");
  affine->add_option("--corr", af_corr, "correspondence file (x y x' y')");
  affine->add_option("--hgt", af_hgt, "ground-truth homography file");
  affine->add_option("--out", af_out, "output file prefix");
  add_common(affine);

  // compare
  auto* cmp = app.add_subcommand("compare", "run engines on one instance");
  std::string cmp_instance;
  std::vector<std::string> cmp_engines{kEngineFloat, kEngineRansac};
  cmp->add_option("--instance", cmp_instance, "instance JSON file")->required();
  cmp->add_option("--engines", cmp_engines, "engines to compare")
      ->delimiter(',');
  add_common(cmp);

  // grid
  auto* grid = app.add_subcommand("grid", "difficulty-grid experiment");
  std::optional<std::string> grid_spec_path;
  std::optional<long> grid_trials;
  std::vector<std::string> grid_engines;
  std::string grid_out = "grid";
  grid->add_option("--grid-spec", grid_spec_path, "grid spec JSON file");
  grid->add_option("--trials", grid_trials, "trials per instance");
  grid->add_option("--engines", grid_engines, "engines to run")
      ->delimiter(',');
  grid->add_option("--out", grid_out, "output file prefix");
  add_common(grid);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("neurorf");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit->parsed())
      return cmd_fit(fit_instance, fit_engine, ov, fit_out, fit_trace,
                     fit_refine, timing);
    if (synth->parsed())
      return cmd_synth(synth_spec, synth_eps, synth_count, synth_out);
    if (linef->parsed())
      return cmd_line_fixed(lf_n, lf_etas, lf_instances, lf_trials, ov, lf_out,
                            timing);
    if (affine->parsed())
      return cmd_affine(af_spec, af_trials, af_eps_px, af_auc_threshold,
                        af_corr, af_hgt, ov, af_out, timing);
    if (cmp->parsed()) return cmd_compare(cmp_instance, cmp_engines, ov, timing);
    if (grid->parsed())
      return cmd_grid(grid_spec_path, grid_trials, grid_engines, ov, grid_out,
                      timing);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const WeightOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonIntegerData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace neurorf
