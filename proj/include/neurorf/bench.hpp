#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "neurorf/dataset.hpp"
#include "neurorf/fit_result.hpp"
#include "neurorf/fixedpoint.hpp"
#include "neurorf/ransac.hpp"
#include "neurorf/snn_engine.hpp"

namespace neurorf {

struct SyntheticSpec {
  long N = 200;
  long d = 8;
  double eta_percent = 20.0;
  double sigma_inlier = 0.1;
  double sigma_outlier = 1.5;
  std::uint64_t seed = 0;

  // Integer line-fitting protocol (d = 2, rows (u, 1)).
  bool integer_mode = false;
  long theta_range = 10;
  long inlier_noise = 1;
  long outlier_noise = 4;

  void validate() const {
    if (N < 1 || d < 1) throw ConfigError("synthetic spec: N and d must be >= 1");
    if (eta_percent < 0.0 || eta_percent > 100.0)
      throw ConfigError("synthetic spec: eta must be in [0, 100]");
    if (sigma_inlier < 0.0 || sigma_outlier < 0.0)
      throw ConfigError("synthetic spec: sigmas must be >= 0");
  }
};

struct LinearInstance {
  Dataset data;
  Model theta_gt;
  std::vector<std::uint8_t> outlier_mask;
};

// Gaussian features, y = x^T theta* + noise(sigma_inlier); exactly
// round(eta*N/100) rows get additional noise(sigma_outlier) on top.
LinearInstance gen_linear_instance(const SyntheticSpec& spec);

struct IntegerLineInstance {
  IntDataset data;
  Model theta_gt;
  std::vector<std::uint8_t> outlier_mask;
  long u_max = 0;  // feature range chosen so all synaptic weights fit 8 bits
};

// Integer theta* in [-theta_range, theta_range]^2, rows (u, 1) with u drawn
// from [-u_max, u_max]; all targets get uniform integer noise in
// [-inlier_noise, inlier_noise], the outlier share additionally in
// [-outlier_noise, outlier_noise].
IntegerLineInstance gen_integer_line_instance(const SyntheticSpec& spec);

struct CorrespondenceSet {
  struct Pair {
    double x, y, xp, yp;
  };
  std::vector<Pair> pairs;
  bool has_H_gt = false;
  Eigen::Matrix3d H_gt = Eigen::Matrix3d::Identity();

  void validate() const;
};

struct AffineModel {
  Eigen::Matrix<double, 2, 3> H = Eigen::Matrix<double, 2, 3>::Zero();

  // Row-major length-6 parameter vector.
  Model to_model() const;
  static AffineModel from_model(const Model& m);
};

// Two rows per correspondence, interleaved: row 2i is
// (x, y, 1, 0, 0, 0) -> x', row 2i+1 is (0, 0, 0, x, y, 1) -> y'.
Dataset affine_to_dataset(const CorrespondenceSet& corrs);

Eigen::Matrix3d lift_affine_to_homography(const AffineModel& a);

// Mean corner displacement between the two homographies over the image
// rectangle, mapped to max(0, 1 - e/T).
double corner_auc(const Eigen::Matrix3d& H_est, const Eigen::Matrix3d& H_gt,
                  double width, double height, double max_threshold_px);

// Correspondence i is an inlier iff both of its rows have residual <= eps.
std::vector<std::uint8_t> pair_inlier_mask(const Dataset& data,
                                           const Model& model, double eps);
long pair_consensus(const Dataset& data, const Model& model, double eps);

// LS over the rows of the selected pairs; needs at least 3 pairs.
Model refine_pairs(const Dataset& data,
                   const std::vector<std::uint8_t>& pair_mask);

// Centering and unit-RMS scaling of both sides; gradient descent needs the
// conditioning, and the inverse transform is applied before any metric.
struct NormalizedAffineProblem {
  Dataset data;
  Eigen::Matrix3d T_src = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d T_dst = Eigen::Matrix3d::Identity();
  double eps_norm = 0.0;
  double eps_px = 0.0;
};

NormalizedAffineProblem normalize_affine(const CorrespondenceSet& corrs,
                                         double eps_px);
AffineModel denormalize_affine(const Model& normalized_model,
                               const NormalizedAffineProblem& prob);

struct AffineSyntheticSpec {
  long pairs = 50;
  double outlier_fraction = 0.3;
  double sigma_noise = 0.5;
  double width = 640.0;
  double height = 480.0;
  std::uint64_t seed = 0;
};

struct AffineInstance {
  CorrespondenceSet corrs;  // H_gt populated from the generating transform
  AffineModel gt;
  std::vector<std::uint8_t> outlier_mask;
};

// Similarity-plus-translation ground truth, Gaussian pixel noise on inlier
// targets, outlier targets replaced by uniform image points.
AffineInstance gen_affine_instance(const AffineSyntheticSpec& spec);

struct AffineFitOutcome {
  AffineModel est;
  double auc = 0.0;
  long pair_psi = 0;
  FitResult fit;
};

AffineFitOutcome fit_affine_snn(const CorrespondenceSet& corrs, double eps_px,
                                SnnConfig cfg, double width, double height,
                                double auc_threshold_px);
AffineFitOutcome fit_affine_ransac(const CorrespondenceSet& corrs,
                                   double eps_px, RansacConfig cfg,
                                   double width, double height,
                                   double auc_threshold_px);

// Closed-form totals for a full run (every timestep sweeps all layers).
OpCounts expected_op_counts(long n, long d, long K, long M);

struct OpProxyReport {
  OpCounts counts;
  std::int64_t timesteps = 0;
};

OpProxyReport op_proxy_report(const FitResult& result, long n, long d);

struct GridCell {
  long N;
  long d;
  double eta;
};

// The difficulty sweeps (N at d=8/eta=20; d at N=200/eta=20; eta at
// N=200/d=8), deduplicated: 13 cells, 5 instances each.
std::vector<GridCell> default_difficulty_grid();
inline constexpr int kGridInstancesPerCell = 5;

}  // namespace neurorf
