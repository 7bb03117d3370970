#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neurorf/bench.hpp"
#include "neurorf/dataset.hpp"
#include "neurorf/fit_result.hpp"

namespace neurorf {

struct InstanceFile {
  Dataset data;
  std::optional<Model> theta_gt;
  std::optional<double> eps_inlier;
};

// Instance document: {"d": int, "X": [[...],...], "y": [...],
//  "theta_gt": [...] optional, "eps_inlier": real optional}.
InstanceFile parse_instance(const std::string& text);
InstanceFile read_instance(const std::string& path);
std::string instance_to_json(const Dataset& data, const Model* theta_gt,
                             const double* eps_inlier);
void write_instance(const std::string& path, const Dataset& data,
                    const Model* theta_gt, const double* eps_inlier);

// One correspondence per line: "x y x' y'"; '#' starts a comment line.
CorrespondenceSet read_correspondences(const std::string& path);
// Nine whitespace-separated reals, row-major.
Eigen::Matrix3d read_homography(const std::string& path);

// Run parameters mirrored from the config document; absent fields keep the
// experiment family's defaults.
struct FileConfig {
  std::optional<long> K;
  std::optional<long> M;
  std::optional<double> alpha;
  std::optional<double> eps_inlier;
  std::optional<std::uint64_t> seed;
  std::optional<double> divergence_cap;
  std::optional<int> beta;
  std::optional<int> weight_bits;
  std::optional<int> state_bits;
  std::optional<int> lfsr_bits;
};

FileConfig parse_config(const std::string& text);
FileConfig read_config(const std::string& path);

inline constexpr const char* kResultsHeader =
    "instance_id,method,psi,normdist_or_auc,synaptic_ops,wall_time";

struct ResultRow {
  std::string instance_id;
  std::string method;
  long psi = 0;
  double normdist_or_auc = 0.0;
  std::int64_t synaptic_ops = 0;
  double wall_time = 0.0;
};

std::string results_csv(const std::vector<ResultRow>& rows);
void write_results_csv(const std::string& path,
                       const std::vector<ResultRow>& rows);

// window,psi,theta_0..theta_{d-1},diverged[,saturations,drift]
std::string trace_csv_header(long d, bool fixed_point);
std::string trace_csv(const FitResult& result, long d, bool fixed_point);
void write_trace_csv(const std::string& path, const FitResult& result, long d,
                     bool fixed_point);

inline constexpr const char* kOpCountsHeader =
    "synaptic_ops,neuron_updates,spikes";
std::string op_counts_csv(const OpCounts& counts);

inline constexpr const char* kGridSummaryHeader =
    "N,d,eta,method,trials,mean_normdist,std_normdist,mean_psi";

struct GridSummaryRow {
  long N = 0;
  long d = 0;
  double eta = 0.0;
  std::string method;
  long trials = 0;
  double mean_normdist = 0.0;
  double std_normdist = 0.0;
  double mean_psi = 0.0;
};

std::string grid_summary_csv(const std::vector<GridSummaryRow>& rows);
void write_grid_summary_csv(const std::string& path,
                            const std::vector<GridSummaryRow>& rows);

std::string format_real(double v);  // shortest stable form, %.10g
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace neurorf
