#include "neurorf/bench.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"

namespace neurorf {

LinearInstance gen_linear_instance(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  LinearInstance inst;

  Eigen::VectorXd theta(spec.d);
  do {
    for (long j = 0; j < spec.d; ++j) theta[j] = rng.gaussian();
  } while (theta.norm() < 1e-6);
  inst.theta_gt = Model{theta};

  inst.data.X.resize(spec.N, spec.d);
  for (long i = 0; i < spec.N; ++i)
    for (long j = 0; j < spec.d; ++j) inst.data.X(i, j) = rng.gaussian();
  inst.data.y.resize(spec.N);
  for (long i = 0; i < spec.N; ++i)
    inst.data.y[i] =
        inst.data.X.row(i).dot(theta) + spec.sigma_inlier * rng.gaussian();

  const long n_out =
      static_cast<long>(std::llround(spec.eta_percent * spec.N / 100.0));
  inst.outlier_mask.assign(static_cast<std::size_t>(spec.N), 0);
  const auto chosen = rng.sample_without_replacement(
      static_cast<std::size_t>(spec.N), static_cast<std::size_t>(n_out));
  for (auto i : chosen) {
    inst.outlier_mask[i] = 1;
    inst.data.y[static_cast<Eigen::Index>(i)] +=
        spec.sigma_outlier * rng.gaussian();
  }
  return inst;
}

IntegerLineInstance gen_integer_line_instance(const SyntheticSpec& spec) {
  spec.validate();
  if (!spec.integer_mode)
    throw ConfigError("integer line generator: integer_mode not set");
  Rng rng(spec.seed);
  IntegerLineInstance inst;

  long t0 = 0, t1 = 0;
  do {
    t0 = rng.uniform_int(-spec.theta_range, spec.theta_range);
    t1 = rng.uniform_int(-spec.theta_range, spec.theta_range);
  } while (t0 == 0 && t1 == 0);
  inst.theta_gt = Model{Eigen::Vector2d(static_cast<double>(t0),
                                        static_cast<double>(t1))};

  // Largest feature range whose worst-case synaptic weights (u^2, y*u, y)
  // stay within 8 bits, given |y| <= |t0|*u + |t1| + total noise.
  const long wmax = 127;
  const long noise = spec.inlier_noise + spec.outlier_noise;
  long u_max = 1;
  for (long u = spec.theta_range; u >= 1; --u) {
    const long ymax = std::abs(t0) * u + std::abs(t1) + noise;
    if (u * u <= wmax && ymax * u <= wmax && ymax <= wmax) {
      u_max = u;
      break;
    }
  }
  inst.u_max = u_max;

  inst.data.X.resize(spec.N, 2);
  inst.data.y.resize(spec.N);
  inst.data.scale = 1;
  for (long i = 0; i < spec.N; ++i) {
    const long u = rng.uniform_int(-u_max, u_max);
    inst.data.X(i, 0) = u;
    inst.data.X(i, 1) = 1;
    inst.data.y[i] = t0 * u + t1 +
                     rng.uniform_int(-spec.inlier_noise, spec.inlier_noise);
  }

  const long n_out =
      static_cast<long>(std::llround(spec.eta_percent * spec.N / 100.0));
  inst.outlier_mask.assign(static_cast<std::size_t>(spec.N), 0);
  const auto chosen = rng.sample_without_replacement(
      static_cast<std::size_t>(spec.N), static_cast<std::size_t>(n_out));
  for (auto i : chosen) {
    inst.outlier_mask[i] = 1;
    inst.data.y[static_cast<Eigen::Index>(i)] +=
        rng.uniform_int(-spec.outlier_noise, spec.outlier_noise);
  }
  return inst;
}

void CorrespondenceSet::validate() const {
  if (pairs.size() < 3)
    throw InsufficientPoints("correspondences: need at least 3 pairs");
  for (const auto& p : pairs)
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.xp) ||
        !std::isfinite(p.yp))
      throw DimensionError("correspondences: non-finite coordinates");
}

Model AffineModel::to_model() const {
  Eigen::VectorXd v(6);
  v << H(0, 0), H(0, 1), H(0, 2), H(1, 0), H(1, 1), H(1, 2);
  return Model{v};
}

AffineModel AffineModel::from_model(const Model& m) {
  if (m.theta.size() != 6)
    throw DimensionError("affine model: parameter vector must have length 6");
  AffineModel a;
  a.H << m.theta[0], m.theta[1], m.theta[2], m.theta[3], m.theta[4], m.theta[5];
  return a;
}

Dataset affine_to_dataset(const CorrespondenceSet& corrs) {
  corrs.validate();
  const Eigen::Index L = static_cast<Eigen::Index>(corrs.pairs.size());
  Dataset ds;
  ds.X = Eigen::MatrixXd::Zero(2 * L, 6);
  ds.y.resize(2 * L);
  for (Eigen::Index i = 0; i < L; ++i) {
    const auto& p = corrs.pairs[static_cast<std::size_t>(i)];
    ds.X(2 * i, 0) = p.x;
    ds.X(2 * i, 1) = p.y;
    ds.X(2 * i, 2) = 1.0;
    ds.y[2 * i] = p.xp;
    ds.X(2 * i + 1, 3) = p.x;
    ds.X(2 * i + 1, 4) = p.y;
    ds.X(2 * i + 1, 5) = 1.0;
    ds.y[2 * i + 1] = p.yp;
  }
  return ds;
}

Eigen::Matrix3d lift_affine_to_homography(const AffineModel& a) {
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  H.topRows<2>() = a.H;
  H(2, 2) = 1.0;
  return H;
}

namespace {

Eigen::Vector2d project(const Eigen::Matrix3d& H, double x, double y) {
  const Eigen::Vector3d v = H * Eigen::Vector3d(x, y, 1.0);
  if (std::abs(v[2]) < 1e-12)
    throw DegenerateHomography("homography maps a corner to infinity");
  return {v[0] / v[2], v[1] / v[2]};
}

}  // namespace

double corner_auc(const Eigen::Matrix3d& H_est, const Eigen::Matrix3d& H_gt,
                  double width, double height, double max_threshold_px) {
  if (!(max_threshold_px > 0.0))
    throw ConfigError("corner_auc: threshold must be > 0");
  if (std::abs(H_gt.determinant()) < 1e-12)
    throw DegenerateHomography("corner_auc: ground-truth homography singular");
  if (std::abs(H_est.determinant()) < 1e-12)
    throw DegenerateHomography("corner_auc: estimated homography singular");
  const double xs[4] = {0.0, width, width, 0.0};
  const double ys[4] = {0.0, 0.0, height, height};
  double e = 0.0;
  for (int i = 0; i < 4; ++i)
    e += (project(H_est, xs[i], ys[i]) - project(H_gt, xs[i], ys[i])).norm();
  e /= 4.0;
  return std::max(0.0, 1.0 - e / max_threshold_px);
}

std::vector<std::uint8_t> pair_inlier_mask(const Dataset& data,
                                           const Model& model, double eps) {
  const Eigen::VectorXd r = residuals(data, model);
  if (r.size() % 2 != 0)
    throw DimensionError("pair mask: dataset must have an even row count");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(r.size() / 2));
  for (Eigen::Index i = 0; i < r.size() / 2; ++i)
    mask[static_cast<std::size_t>(i)] =
        (r[2 * i] <= eps && r[2 * i + 1] <= eps) ? 1 : 0;
  return mask;
}

long pair_consensus(const Dataset& data, const Model& model, double eps) {
  long c = 0;
  for (auto b : pair_inlier_mask(data, model, eps)) c += b ? 1 : 0;
  return c;
}

Model refine_pairs(const Dataset& data,
                   const std::vector<std::uint8_t>& pair_mask) {
  if (static_cast<Eigen::Index>(pair_mask.size()) * 2 != data.N())
    throw DimensionError("refine_pairs: mask does not match dataset");
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < pair_mask.size(); ++i)
    if (pair_mask[i]) {
      rows.push_back(static_cast<Eigen::Index>(2 * i));
      rows.push_back(static_cast<Eigen::Index>(2 * i + 1));
    }
  if (rows.size() < 6)
    throw InsufficientPoints("refine_pairs: fewer than 3 inlier pairs");
  Dataset sub;
  sub.X.resize(static_cast<Eigen::Index>(rows.size()), data.d());
  sub.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sub.X.row(static_cast<Eigen::Index>(i)) = data.X.row(rows[i]);
    sub.y[static_cast<Eigen::Index>(i)] = data.y[rows[i]];
  }
  return solve_ls(sub);
}

NormalizedAffineProblem normalize_affine(const CorrespondenceSet& corrs,
                                         double eps_px) {
  corrs.validate();
  const std::size_t L = corrs.pairs.size();
  Eigen::Vector2d mu_src = Eigen::Vector2d::Zero();
  Eigen::Vector2d mu_dst = Eigen::Vector2d::Zero();
  for (const auto& p : corrs.pairs) {
    mu_src += Eigen::Vector2d(p.x, p.y);
    mu_dst += Eigen::Vector2d(p.xp, p.yp);
  }
  mu_src /= static_cast<double>(L);
  mu_dst /= static_cast<double>(L);
  double ssrc = 0.0, sdst = 0.0;
  for (const auto& p : corrs.pairs) {
    ssrc += (Eigen::Vector2d(p.x, p.y) - mu_src).squaredNorm();
    sdst += (Eigen::Vector2d(p.xp, p.yp) - mu_dst).squaredNorm();
  }
  ssrc = std::sqrt(ssrc / static_cast<double>(L));
  sdst = std::sqrt(sdst / static_cast<double>(L));
  if (ssrc < 1e-9 || sdst < 1e-9)
    throw DegenerateData("normalize_affine: coincident correspondence cloud");

  NormalizedAffineProblem prob;
  prob.T_src << 1.0 / ssrc, 0.0, -mu_src[0] / ssrc, 0.0, 1.0 / ssrc,
      -mu_src[1] / ssrc, 0.0, 0.0, 1.0;
  prob.T_dst << 1.0 / sdst, 0.0, -mu_dst[0] / sdst, 0.0, 1.0 / sdst,
      -mu_dst[1] / sdst, 0.0, 0.0, 1.0;
  prob.eps_px = eps_px;
  prob.eps_norm = eps_px / sdst;

  CorrespondenceSet norm;
  norm.pairs.reserve(L);
  for (const auto& p : corrs.pairs)
    norm.pairs.push_back({(p.x - mu_src[0]) / ssrc, (p.y - mu_src[1]) / ssrc,
                          (p.xp - mu_dst[0]) / sdst,
                          (p.yp - mu_dst[1]) / sdst});
  prob.data = affine_to_dataset(norm);
  return prob;
}

AffineModel denormalize_affine(const Model& normalized_model,
                               const NormalizedAffineProblem& prob) {
  const Eigen::Matrix3d Hn =
      lift_affine_to_homography(AffineModel::from_model(normalized_model));
  const Eigen::Matrix3d H = prob.T_dst.inverse() * Hn * prob.T_src;
  AffineModel out;
  out.H = H.topRows<2>();
  return out;
}

AffineInstance gen_affine_instance(const AffineSyntheticSpec& spec) {
  if (spec.pairs < 3)
    throw ConfigError("affine generator: need at least 3 pairs");
  if (spec.outlier_fraction < 0.0 || spec.outlier_fraction >= 1.0)
    throw ConfigError("affine generator: outlier fraction must be in [0, 1)");
  Rng rng(spec.seed);

  const double angle = rng.uniform(-0.5, 0.5);
  const double scale = rng.uniform(0.8, 1.2);
  const double tx = rng.uniform(-20.0, 20.0);
  const double ty = rng.uniform(-20.0, 20.0);
  AffineInstance inst;
  inst.gt.H << scale * std::cos(angle), -scale * std::sin(angle), tx,
      scale * std::sin(angle), scale * std::cos(angle), ty;

  inst.corrs.pairs.reserve(static_cast<std::size_t>(spec.pairs));
  for (long i = 0; i < spec.pairs; ++i) {
    const double x = rng.uniform(0.0, spec.width);
    const double y = rng.uniform(0.0, spec.height);
    const Eigen::Vector2d t =
        inst.gt.H * Eigen::Vector3d(x, y, 1.0) +
        spec.sigma_noise * Eigen::Vector2d(rng.gaussian(), rng.gaussian());
    inst.corrs.pairs.push_back({x, y, t[0], t[1]});
  }

  const long n_out = static_cast<long>(
      std::llround(spec.outlier_fraction * static_cast<double>(spec.pairs)));
  inst.outlier_mask.assign(static_cast<std::size_t>(spec.pairs), 0);
  const auto chosen = rng.sample_without_replacement(
      static_cast<std::size_t>(spec.pairs), static_cast<std::size_t>(n_out));
  for (auto i : chosen) {
    inst.outlier_mask[i] = 1;
    inst.corrs.pairs[i].xp = rng.uniform(0.0, spec.width);
    inst.corrs.pairs[i].yp = rng.uniform(0.0, spec.height);
  }

  inst.corrs.has_H_gt = true;
  inst.corrs.H_gt = lift_affine_to_homography(inst.gt);
  return inst;
}

namespace {

AffineFitOutcome finish_affine(const CorrespondenceSet& corrs,
                               const NormalizedAffineProblem& prob,
                               const Model& engine_model, FitResult fit,
                               double width, double height,
                               double auc_threshold_px) {
  AffineFitOutcome out;
  out.fit = std::move(fit);

  Model final_model = engine_model;
  const auto mask = pair_inlier_mask(prob.data, final_model, prob.eps_norm);
  long pairs_in = 0;
  for (auto b : mask) pairs_in += b ? 1 : 0;
  if (pairs_in >= 3) final_model = refine_pairs(prob.data, mask);
  out.pair_psi = pair_consensus(prob.data, final_model, prob.eps_norm);
  out.est = denormalize_affine(final_model, prob);

  if (corrs.has_H_gt)
    out.auc = corner_auc(lift_affine_to_homography(out.est), corrs.H_gt, width,
                         height, auc_threshold_px);
  else
    out.auc = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

AffineFitOutcome fit_affine_snn(const CorrespondenceSet& corrs, double eps_px,
                                SnnConfig cfg, double width, double height,
                                double auc_threshold_px) {
  const NormalizedAffineProblem prob = normalize_affine(corrs, eps_px);
  cfg.eps_inlier = prob.eps_norm;
  FitResult fit = run_snn(prob.data, cfg);
  const Model m = fit.theta_best;
  return finish_affine(corrs, prob, m, std::move(fit), width, height,
                       auc_threshold_px);
}

AffineFitOutcome fit_affine_ransac(const CorrespondenceSet& corrs,
                                   double eps_px, RansacConfig cfg,
                                   double width, double height,
                                   double auc_threshold_px) {
  const NormalizedAffineProblem prob = normalize_affine(corrs, eps_px);
  cfg.eps_inlier = prob.eps_norm;
  FitResult fit = ransac(prob.data, cfg);
  const Model m = fit.theta_best;
  return finish_affine(corrs, prob, m, std::move(fit), width, height,
                       auc_threshold_px);
}

OpCounts expected_op_counts(long n, long d, long K, long M) {
  const std::int64_t L =
      static_cast<std::int64_t>(K) * (2 * static_cast<std::int64_t>(M) + 4);
  OpCounts c;
  c.synaptic_ops = L * (n * (d * d + 4 * d + 1));
  c.neuron_updates = L * (n * d + 2 * n + d + 1);
  c.spikes = L * (n * d + 2 * n + d);
  return c;
}

OpProxyReport op_proxy_report(const FitResult& result, long n, long d) {
  OpProxyReport rep;
  rep.counts = result.op_counts;
  const std::int64_t per_step = n * d + 2 * n + d + 1;
  rep.timesteps = per_step > 0 ? result.op_counts.neuron_updates / per_step : 0;
  return rep;
}

std::vector<GridCell> default_difficulty_grid() {
  std::vector<GridCell> cells;
  const auto add_unique = [&cells](long N, long d, double eta) {
    for (const auto& c : cells)
      if (c.N == N && c.d == d && c.eta == eta) return;
    cells.push_back({N, d, eta});
  };
  for (long N : {100L, 200L, 300L, 400L, 500L}) add_unique(N, 8, 20.0);
  for (long d : {2L, 3L, 6L, 8L}) add_unique(200, d, 20.0);
  for (double eta : {10.0, 20.0, 30.0, 40.0, 50.0, 60.0}) add_unique(200, 8, eta);
  return cells;
}

}  // namespace neurorf
