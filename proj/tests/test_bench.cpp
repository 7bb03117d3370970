#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "neurorf/bench.hpp"
#include "neurorf/errors.hpp"
#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"
#include "oracle_helpers.hpp"

using namespace neurorf;

TEST_CASE("linear generator is deterministic per seed") {
  SyntheticSpec spec;
  spec.N = 50;
  spec.d = 4;
  spec.eta_percent = 20.0;
  spec.seed = 314;
  const auto a = gen_linear_instance(spec);
  const auto b = gen_linear_instance(spec);
  CHECK(a.data.X == b.data.X);
  CHECK(a.data.y == b.data.y);
  CHECK(a.theta_gt.theta == b.theta_gt.theta);
  CHECK(a.outlier_mask == b.outlier_mask);
  spec.seed = 315;
  const auto c = gen_linear_instance(spec);
  CHECK(a.data.y != c.data.y);
}

TEST_CASE("linear generator corrupts exactly the requested share") {
  SyntheticSpec spec;
  spec.N = 200;
  spec.d = 8;
  spec.eta_percent = 20.0;
  spec.seed = 7;
  const auto inst = gen_linear_instance(spec);
  CHECK(oracle::popcount(inst.outlier_mask) == 40);
  CHECK(inst.data.N() == 200);
  CHECK(inst.data.d() == 8);

  spec.eta_percent = 0.0;
  spec.sigma_inlier = 0.0;
  const auto clean = gen_linear_instance(spec);
  CHECK(oracle::loop_consensus(clean.data, clean.theta_gt.theta, 0.0) == 200);
}

TEST_CASE("linear generator noise stays far inside the inlier threshold") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SyntheticSpec spec;
    spec.N = 200;
    spec.d = 8;
    spec.eta_percent = 20.0;
    spec.seed = seed;
    const auto inst = gen_linear_instance(spec);
    const long clean_rows = 200 - 40;
    const long hits = oracle::loop_consensus(inst.data, inst.theta_gt.theta, 0.5);
    CHECK(hits >= static_cast<long>(0.95 * clean_rows));
  }
}

TEST_CASE("integer line generator obeys the protocol") {
  SyntheticSpec spec;
  spec.N = 20;
  spec.d = 2;
  spec.eta_percent = 50.0;
  spec.integer_mode = true;
  spec.seed = 42;
  const auto inst = gen_integer_line_instance(spec);
  CHECK(oracle::popcount(inst.outlier_mask) == 10);
  CHECK(inst.data.N() == 20);
  CHECK(inst.data.d() == 2);
  CHECK(inst.theta_gt.theta.size() == 2);
  CHECK(std::abs(inst.theta_gt.theta[0]) <= 10.0);
  CHECK(std::abs(inst.theta_gt.theta[1]) <= 10.0);
  CHECK(inst.u_max >= 1);
  for (Eigen::Index i = 0; i < 20; ++i) {
    CHECK(inst.data.X(i, 1) == 1);
    CHECK(std::abs(inst.data.X(i, 0)) <= inst.u_max);
  }

  spec.eta_percent = 0.0;
  const auto clean = gen_integer_line_instance(spec);
  const auto real = clean.data.to_real();
  CHECK(oracle::loop_consensus(real, clean.theta_gt.theta, 4.0) == 20);
  // Inlier noise alone never exceeds 1.
  CHECK(oracle::loop_consensus(real, clean.theta_gt.theta, 1.0) == 20);
}

TEST_CASE("integer line generator never requires a rejected seed") {
  SyntheticSpec spec;
  spec.N = 20;
  spec.d = 2;
  spec.eta_percent = 50.0;
  spec.integer_mode = true;
  const auto cfg = make_fixed_point_config(0.02, 10);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    spec.seed = seed;
    const auto inst = gen_integer_line_instance(spec);
    CHECK_NOTHROW(quantize_dataset(inst.data.to_real(), cfg));
    CHECK((inst.theta_gt.theta[0] != 0.0 || inst.theta_gt.theta[1] != 0.0));
  }
}

TEST_CASE("integer line generator requires integer_mode") {
  SyntheticSpec spec;
  spec.N = 20;
  spec.integer_mode = false;
  CHECK_THROWS_AS(gen_integer_line_instance(spec), ConfigError);
}

TEST_CASE("affine dataset layout interleaves the two equations") {
  CorrespondenceSet corrs;
  corrs.pairs = {{1.0, 2.0, 3.0, 4.0}, {5.0, 6.0, 7.0, 8.0}, {0.0, 1.0, 2.0, 3.0}};
  const auto ds = affine_to_dataset(corrs);
  REQUIRE(ds.N() == 6);
  REQUIRE(ds.d() == 6);
  CHECK(ds.X(0, 0) == 1.0);
  CHECK(ds.X(0, 1) == 2.0);
  CHECK(ds.X(0, 2) == 1.0);
  CHECK(ds.X(0, 3) == 0.0);
  CHECK(ds.y[0] == 3.0);
  CHECK(ds.X(1, 0) == 0.0);
  CHECK(ds.X(1, 3) == 1.0);
  CHECK(ds.X(1, 4) == 2.0);
  CHECK(ds.X(1, 5) == 1.0);
  CHECK(ds.y[1] == 4.0);

  CorrespondenceSet tiny;
  tiny.pairs = {{0, 0, 0, 0}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(affine_to_dataset(tiny), InsufficientPoints);
}

TEST_CASE("identity correspondences solve to the identity affine") {
  CorrespondenceSet corrs;
  corrs.pairs = {{0.0, 0.0, 0.0, 0.0},
                 {1.0, 0.0, 1.0, 0.0},
                 {0.0, 1.0, 0.0, 1.0},
                 {2.0, 3.0, 2.0, 3.0}};
  const auto ds = affine_to_dataset(corrs);
  const auto m = solve_ls(ds);
  const auto a = AffineModel::from_model(m);
  Eigen::Matrix<double, 2, 3> expect;
  expect << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  CHECK((a.H - expect).norm() <= 1e-9);
}

TEST_CASE("three exact pairs determine the affine transform") {
  AffineModel gt;
  gt.H << 1.1, -0.2, 5.0, 0.3, 0.9, -7.0;
  CorrespondenceSet corrs;
  for (auto [x, y] : {std::pair{0.0, 0.0}, {4.0, 1.0}, {1.0, 3.0}}) {
    const Eigen::Vector2d t = gt.H * Eigen::Vector3d(x, y, 1.0);
    corrs.pairs.push_back({x, y, t[0], t[1]});
  }
  const auto m = solve_ls(affine_to_dataset(corrs));
  CHECK((AffineModel::from_model(m).H - gt.H).norm() <= 1e-9);
}

TEST_CASE("lifting an affine model appends the projective row") {
  AffineModel a;
  a.H << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  CHECK((lift_affine_to_homography(a) - Eigen::Matrix3d::Identity()).norm() ==
        doctest::Approx(0.0));

  AffineModel tr;
  tr.H << 1.0, 0.0, 4.0, 0.0, 1.0, -2.0;
  const auto H = lift_affine_to_homography(tr);
  CHECK(H(0, 2) == 4.0);
  CHECK(H(1, 2) == -2.0);
  CHECK(H(2, 0) == 0.0);
  CHECK(H(2, 1) == 0.0);
  CHECK(H(2, 2) == 1.0);

  Rng rng(55);
  AffineModel any;
  any.H << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-9, 9),
      rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-9, 9);
  const auto Ha = lift_affine_to_homography(any);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = rng.uniform(-10, 10), y = rng.uniform(-10, 10);
    const Eigen::Vector3d lifted = Ha * Eigen::Vector3d(x, y, 1.0);
    const Eigen::Vector2d direct = any.H * Eigen::Vector3d(x, y, 1.0);
    CHECK(lifted[2] == doctest::Approx(1.0));
    CHECK(lifted[0] == doctest::Approx(direct[0]));
    CHECK(lifted[1] == doctest::Approx(direct[1]));
  }
}

TEST_CASE("corner auc worked examples") {
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  CHECK(corner_auc(I, I, 640, 480, 10.0) == doctest::Approx(1.0));

  Eigen::Matrix3d shift = I;
  shift(0, 2) = 5.0;  // every corner moves exactly 5 px
  CHECK(corner_auc(shift, I, 640, 480, 10.0) == doctest::Approx(0.5));

  shift(0, 2) = 25.0;
  CHECK(corner_auc(shift, I, 640, 480, 10.0) == doctest::Approx(0.0));

  Eigen::Matrix3d singular = Eigen::Matrix3d::Zero();
  CHECK_THROWS_AS(corner_auc(singular, I, 640, 480, 10.0), DegenerateHomography);
  CHECK_THROWS_AS(corner_auc(I, singular, 640, 480, 10.0), DegenerateHomography);
}

TEST_CASE("corner auc is monotone in error and threshold") {
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  double prev = 2.0;
  for (double t = 0.0; t <= 12.0; t += 2.0) {
    Eigen::Matrix3d shift = I;
    shift(1, 2) = t;
    const double auc = corner_auc(shift, I, 640, 480, 10.0);
    CHECK(auc <= prev);
    prev = auc;
  }
  Eigen::Matrix3d shift = I;
  shift(0, 2) = 5.0;
  CHECK(corner_auc(shift, I, 640, 480, 5.0) <=
        corner_auc(shift, I, 640, 480, 10.0));
  CHECK(corner_auc(shift, I, 640, 480, 20.0) == doctest::Approx(0.75));
}

TEST_CASE("pair inlier rule ANDs both rows of a correspondence") {
  CorrespondenceSet corrs;
  corrs.pairs = {{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}};
  auto ds = affine_to_dataset(corrs);
  Model ident;
  ident.theta.resize(6);
  ident.theta << 1, 0, 0, 0, 1, 0;
  auto mask = pair_inlier_mask(ds, ident, 0.1);
  CHECK(mask == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(pair_consensus(ds, ident, 0.1) == 3);

  ds.y[3] += 1.0;  // perturb only the y-row of pair 1
  mask = pair_inlier_mask(ds, ident, 0.1);
  CHECK(mask == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(pair_consensus(ds, ident, 0.1) == 2);
}

TEST_CASE("pair refinement needs three pairs and restores the exact fit") {
  AffineModel gt;
  gt.H << 0.9, 0.1, 2.0, -0.1, 1.1, 1.0;
  CorrespondenceSet corrs;
  Rng rng(77);
  for (int i = 0; i < 6; ++i) {
    const double x = rng.uniform(-5, 5), y = rng.uniform(-5, 5);
    const Eigen::Vector2d t = gt.H * Eigen::Vector3d(x, y, 1.0);
    corrs.pairs.push_back({x, y, t[0], t[1]});
  }
  corrs.pairs[5].xp += 50.0;  // one outlier pair
  const auto ds = affine_to_dataset(corrs);

  std::vector<std::uint8_t> mask = {1, 1, 1, 1, 1, 0};
  const auto refined = refine_pairs(ds, mask);
  CHECK((AffineModel::from_model(refined).H - gt.H).norm() <= 1e-8);

  std::vector<std::uint8_t> starved = {1, 1, 0, 0, 0, 0};
  CHECK_THROWS_AS(refine_pairs(ds, starved), InsufficientPoints);
}

TEST_CASE("normalization round trip preserves the transform") {
  AffineModel gt;
  gt.H << 1.05, -0.15, 12.0, 0.2, 0.95, -6.0;
  CorrespondenceSet corrs;
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(0, 640), y = rng.uniform(0, 480);
    const Eigen::Vector2d t = gt.H * Eigen::Vector3d(x, y, 1.0);
    corrs.pairs.push_back({x, y, t[0], t[1]});
  }
  const auto prob = normalize_affine(corrs, 2.0);
  CHECK(prob.eps_px == 2.0);
  CHECK(prob.eps_norm > 0.0);

  // Normalized clouds have zero mean and unit RMS on both sides.
  double sx = 0, sy = 0, rms_src = 0, rms_dst = 0;
  for (Eigen::Index i = 0; i < prob.data.N(); i += 2) {
    sx += prob.data.X(i, 0);
    sy += prob.data.X(i, 1);
    rms_src += prob.data.X(i, 0) * prob.data.X(i, 0) +
               prob.data.X(i, 1) * prob.data.X(i, 1);
    rms_dst += prob.data.y[i] * prob.data.y[i] +
               prob.data.y[i + 1] * prob.data.y[i + 1];
  }
  const double L = static_cast<double>(prob.data.N()) / 2.0;
  CHECK(std::abs(sx / L) <= 1e-9);
  CHECK(std::abs(sy / L) <= 1e-9);
  CHECK(std::sqrt(rms_src / L) == doctest::Approx(1.0));
  CHECK(std::sqrt(rms_dst / L) == doctest::Approx(1.0));

  const auto m = solve_ls(prob.data);
  const auto est = denormalize_affine(m, prob);
  CHECK((est.H - gt.H).norm() <= 1e-9);
}

TEST_CASE("affine instance generator is deterministic with exact outlier count") {
  AffineSyntheticSpec spec;
  spec.pairs = 50;
  spec.outlier_fraction = 0.3;
  spec.seed = 5;
  const auto a = gen_affine_instance(spec);
  const auto b = gen_affine_instance(spec);
  REQUIRE(a.corrs.pairs.size() == 50u);
  CHECK(oracle::popcount(a.outlier_mask) == 15);
  CHECK(a.corrs.has_H_gt);
  CHECK(a.corrs.H_gt(2, 2) == 1.0);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(a.corrs.pairs[i].x == b.corrs.pairs[i].x);
    CHECK(a.corrs.pairs[i].yp == b.corrs.pairs[i].yp);
  }
  CHECK((a.gt.H - b.gt.H).norm() == doctest::Approx(0.0));
}

TEST_CASE("classical engine recovers a synthetic affine transform") {
  AffineSyntheticSpec spec;
  spec.seed = 11;
  const auto inst = gen_affine_instance(spec);
  RansacConfig cfg;
  cfg.K = 100;
  cfg.seed = 23;
  const auto out =
      fit_affine_ransac(inst.corrs, 2.0, cfg, spec.width, spec.height, 10.0);
  CHECK(out.auc >= 0.9);
  CHECK(out.pair_psi >= 30);
}

TEST_CASE("snn engine recovers a synthetic affine transform") {
  AffineSyntheticSpec spec;
  spec.seed = 13;
  const auto inst = gen_affine_instance(spec);
  SnnConfig cfg;
  cfg.K = 100;
  cfg.M = 200;
  cfg.alpha = 0.02;
  cfg.seed = 29;
  const auto out =
      fit_affine_snn(inst.corrs, 2.0, cfg, spec.width, spec.height, 10.0);
  CHECK(out.auc >= 0.9);
  CHECK(out.pair_psi >= 30);
}

TEST_CASE("missing ground truth yields a NaN auc") {
  AffineSyntheticSpec spec;
  spec.seed = 17;
  auto inst = gen_affine_instance(spec);
  inst.corrs.has_H_gt = false;
  RansacConfig cfg;
  cfg.K = 50;
  cfg.seed = 3;
  const auto out =
      fit_affine_ransac(inst.corrs, 2.0, cfg, spec.width, spec.height, 10.0);
  CHECK(std::isnan(out.auc));
  CHECK(out.pair_psi >= 30);
}

TEST_CASE("op counts match the closed form and scale linearly in K") {
  SyntheticSpec spec;
  spec.N = 5;
  spec.d = 2;
  spec.eta_percent = 0.0;
  spec.seed = 21;
  const auto inst = gen_linear_instance(spec);

  SnnConfig cfg;
  cfg.K = 2;
  cfg.M = 3;
  cfg.seed = 1;
  const auto res = run_snn(inst.data, cfg);
  const auto expect = expected_op_counts(5, 2, 2, 3);
  CHECK(res.op_counts.synaptic_ops == expect.synaptic_ops);
  CHECK(res.op_counts.neuron_updates == expect.neuron_updates);
  CHECK(res.op_counts.spikes == expect.spikes);

  SnnConfig doubled = cfg;
  doubled.K = 4;
  const auto res2 = run_snn(inst.data, doubled);
  CHECK(res2.op_counts.synaptic_ops == 2 * res.op_counts.synaptic_ops);
  CHECK(res2.op_counts.neuron_updates == 2 * res.op_counts.neuron_updates);
  CHECK(res2.op_counts.spikes == 2 * res.op_counts.spikes);

  const auto rep = op_proxy_report(res, 5, 2);
  CHECK(rep.timesteps == cfg.total_timesteps());
  CHECK(rep.counts.synaptic_ops == expect.synaptic_ops);
}

TEST_CASE("fixed and float backends report identical op counts") {
  IntDataset ids;
  ids.X.resize(6, 2);
  ids.y.resize(6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    ids.X(i, 0) = i % 3;
    ids.X(i, 1) = 1;
    ids.y[i] = 2 * (i % 3) + 1;
  }
  SnnConfig cfg;
  cfg.K = 3;
  cfg.M = 5;
  cfg.eps_inlier = 2.0;
  cfg.seed = 8;
  const auto fp = make_fixed_point_config(0.02, 10);
  const auto fx = run_fixed(ids, cfg, fp);
  const auto fl = run_snn(ids.to_real(), cfg);
  CHECK(fx.op_counts.synaptic_ops == fl.op_counts.synaptic_ops);
  CHECK(fx.op_counts.neuron_updates == fl.op_counts.neuron_updates);
  CHECK(fx.op_counts.spikes == fl.op_counts.spikes);
}

TEST_CASE("difficulty grid enumerates 13 unique cells, 65 instances") {
  const auto grid = default_difficulty_grid();
  CHECK(grid.size() == 13u);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      CHECK((grid[i].N != grid[j].N || grid[i].d != grid[j].d ||
             grid[i].eta != grid[j].eta));
  long with_base = 0;
  for (const auto& c : grid) {
    const bool n_sweep = (c.d == 8 && c.eta == 20.0);
    const bool d_sweep = (c.N == 200 && c.eta == 20.0);
    const bool eta_sweep = (c.N == 200 && c.d == 8);
    CHECK((n_sweep || d_sweep || eta_sweep));
    if (c.N == 200 && c.d == 8 && c.eta == 20.0) ++with_base;
  }
  CHECK(with_base == 1);
  CHECK(static_cast<long>(grid.size()) * kGridInstancesPerCell == 65);
}
