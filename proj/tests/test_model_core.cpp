#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "neurorf/errors.hpp"
#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"
#include "oracle_helpers.hpp"

using namespace neurorf;

namespace {

Dataset make_dataset(std::initializer_list<std::initializer_list<double>> rows,
                     std::initializer_list<double> ys) {
  Dataset ds;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(rows.begin()->size());
  ds.X.resize(n, d);
  ds.y.resize(n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) ds.X(i, j++) = v;
    ++i;
  }
  Eigen::Index k = 0;
  for (double v : ys) ds.y[k++] = v;
  return ds;
}

Dataset random_dataset(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Dataset ds;
  ds.X.resize(n, d);
  ds.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) ds.X(i, j) = rng.uniform(-2.0, 2.0);
    ds.y[i] = rng.uniform(-2.0, 2.0);
  }
  return ds;
}

Model model_of(std::initializer_list<double> vals) {
  Model m;
  m.theta.resize(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index j = 0;
  for (double v : vals) m.theta[j++] = v;
  return m;
}

}  // namespace

TEST_CASE("residuals worked example d=1") {
  const auto ds = make_dataset({{1.0}, {2.0}, {3.0}}, {2.0, 4.0, 9.0});
  const auto r = residuals(ds, model_of({2.0}));
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(0.0));
  CHECK(r[2] == doctest::Approx(3.0));
}

TEST_CASE("consensus on worked example") {
  const auto ds = make_dataset({{1.0}, {2.0}, {3.0}}, {2.0, 4.0, 9.0});
  CHECK(consensus(ds, model_of({2.0}), 0.5) == 2);
  CHECK(consensus(ds, model_of({2.0}), 3.0) == 3);
  CHECK(consensus(ds, model_of({2.0}), 2.999) == 2);
}

TEST_CASE("residuals and consensus match loop oracles on random data") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.uniform_index(40));
    const auto d = static_cast<Eigen::Index>(1 + rng.uniform_index(6));
    const auto ds = random_dataset(rng, n, d);
    Model m;
    m.theta.resize(d);
    for (Eigen::Index j = 0; j < d; ++j) m.theta[j] = rng.uniform(-1.0, 1.0);
    const auto r = residuals(ds, m);
    const auto ro = oracle::loop_residuals(ds, m.theta);
    REQUIRE(r.size() == ro.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
      CHECK(r[i] == doctest::Approx(ro[i]).epsilon(1e-12));
    const double eps = rng.uniform(0.0, 2.0);
    CHECK(consensus(ds, m, eps) == oracle::loop_consensus(ds, m.theta, eps));
  }
}

TEST_CASE("consensus monotone in the threshold") {
  Rng rng(55);
  const auto ds = random_dataset(rng, 30, 3);
  Model m;
  m.theta = Eigen::VectorXd::Zero(3);
  long prev = -1;
  for (double eps = 0.0; eps <= 4.0; eps += 0.25) {
    const long c = consensus(ds, m, eps);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(consensus(ds, m, 1e9) == ds.N());
}

TEST_CASE("solve_ls worked example") {
  const auto ds = make_dataset({{0.0, 1.0}, {1.0, 1.0}}, {1.0, 3.0});
  const auto m = solve_ls(ds);
  REQUIRE(m.theta.size() == 2);
  CHECK(m.theta[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m.theta[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_ls matches elimination oracle on overdetermined systems") {
  Rng rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.uniform_index(5));
    const auto n = d + static_cast<Eigen::Index>(2 + rng.uniform_index(20));
    const auto ds = random_dataset(rng, n, d);
    const auto m = solve_ls(ds);
    const auto ref = oracle::normal_equation_ls(ds);
    for (Eigen::Index j = 0; j < d; ++j)
      CHECK(m.theta[j] == doctest::Approx(ref[j]).epsilon(1e-8));
  }
}

TEST_CASE("solve_ls residual is orthogonal to the column space") {
  Rng rng(203);
  const auto ds = random_dataset(rng, 25, 4);
  const auto m = solve_ls(ds);
  const Eigen::VectorXd r = ds.y - ds.X * m.theta;
  const Eigen::VectorXd g = ds.X.transpose() * r;
  CHECK(g.norm() <= 1e-8 * (1.0 + ds.y.norm()));
}

TEST_CASE("solve_ls rejects underdetermined and degenerate input") {
  const auto tall = make_dataset({{1.0, 2.0}}, {1.0});
  CHECK_THROWS_AS(solve_ls(tall), InsufficientPoints);
  const auto flat =
      make_dataset({{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}}, {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(solve_ls(flat), DegenerateSubset);
}

TEST_CASE("quadratic_terms single-row worked example") {
  const auto ds = make_dataset({{2.0, 3.0}}, {5.0});
  const auto qf = quadratic_terms(ds);
  REQUIRE(qf.Q.rows() == 2);
  CHECK(qf.Q(0, 0) == doctest::Approx(4.0));
  CHECK(qf.Q(0, 1) == doctest::Approx(6.0));
  CHECK(qf.Q(1, 0) == doctest::Approx(6.0));
  CHECK(qf.Q(1, 1) == doctest::Approx(9.0));
  CHECK(qf.p[0] == doctest::Approx(-10.0));
  CHECK(qf.p[1] == doctest::Approx(-15.0));
}

TEST_CASE("dense_gradient matches finite differences") {
  Rng rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.uniform_index(5));
    const auto n = d + static_cast<Eigen::Index>(rng.uniform_index(10));
    const auto ds = random_dataset(rng, n, d);
    const auto qf = quadratic_terms(ds);
    Model m;
    m.theta.resize(d);
    for (Eigen::Index j = 0; j < d; ++j) m.theta[j] = rng.uniform(-1.0, 1.0);
    const auto g = dense_gradient(qf, m);
    const auto fd = oracle::fd_gradient(qf.Q, qf.p, m.theta, 1e-5);
    for (Eigen::Index j = 0; j < d; ++j)
      CHECK(g[j] == doctest::Approx(fd[j]).epsilon(1e-4));
  }
}

TEST_CASE("dense_gradient equals full-selection subset gradient") {
  Rng rng(405);
  const auto ds = random_dataset(rng, 12, 3);
  const auto qf = quadratic_terms(ds);
  const auto m = model_of({0.3, -0.7, 1.1});
  std::vector<std::uint8_t> all(12, 1);
  const auto g = dense_gradient(qf, m);
  const auto go = oracle::subset_gradient(ds, m.theta, all);
  for (Eigen::Index j = 0; j < 3; ++j)
    CHECK(g[j] == doctest::Approx(go[j]).epsilon(1e-10));
}

TEST_CASE("replication stencils lay out indices as documented") {
  const auto fd = repeat_each_stencil(3, 2);
  Eigen::VectorXd v(3);
  v << 10.0, 20.0, 30.0;
  const auto out = fd.apply(v);
  REQUIRE(out.size() == 6);
  CHECK(out[0] == 10.0);
  CHECK(out[1] == 10.0);
  CHECK(out[2] == 20.0);
  CHECK(out[3] == 20.0);
  CHECK(out[4] == 30.0);
  CHECK(out[5] == 30.0);

  const auto fn = tile_whole_stencil(3, 2);
  Eigen::VectorXd w(2);
  w << 7.0, 8.0;
  const auto tiled = fn.apply(w);
  REQUIRE(tiled.size() == 6);
  CHECK(tiled[0] == 7.0);
  CHECK(tiled[1] == 8.0);
  CHECK(tiled[2] == 7.0);
  CHECK(tiled[3] == 8.0);
  CHECK(tiled[4] == 7.0);
  CHECK(tiled[5] == 8.0);
}

TEST_CASE("build_lifted single-point worked example") {
  const auto ds = make_dataset({{2.0}}, {6.0});
  const auto ops = build_lifted(ds);
  REQUIRE(ops.Qp.rows() == 1);
  REQUIRE(ops.Qp.cols() == 1);
  CHECK(ops.Qp(0, 0) == doctest::Approx(4.0));
  REQUIRE(ops.Pp.rows() == 1);
  REQUIRE(ops.Pp.cols() == 1);
  CHECK(ops.Pp(0, 0) == doctest::Approx(-12.0));
}

TEST_CASE("build_lifted block layout for N=2 d=2") {
  const auto ds = make_dataset({{1.0, 2.0}, {3.0, 4.0}}, {5.0, 6.0});
  const auto ops = build_lifted(ds);
  REQUIRE(ops.Qp.rows() == 2);
  REQUIRE(ops.Qp.cols() == 4);
  // Block 0 is x_0 x_0^T, block 1 is x_1 x_1^T.
  CHECK(ops.Qp(0, 0) == doctest::Approx(1.0));
  CHECK(ops.Qp(0, 1) == doctest::Approx(2.0));
  CHECK(ops.Qp(1, 0) == doctest::Approx(2.0));
  CHECK(ops.Qp(1, 1) == doctest::Approx(4.0));
  CHECK(ops.Qp(0, 2) == doctest::Approx(9.0));
  CHECK(ops.Qp(0, 3) == doctest::Approx(12.0));
  CHECK(ops.Qp(1, 2) == doctest::Approx(12.0));
  CHECK(ops.Qp(1, 3) == doctest::Approx(16.0));
  // Pp column i is -y_i x_i.
  CHECK(ops.Pp(0, 0) == doctest::Approx(-5.0));
  CHECK(ops.Pp(1, 0) == doctest::Approx(-10.0));
  CHECK(ops.Pp(0, 1) == doctest::Approx(-18.0));
  CHECK(ops.Pp(1, 1) == doctest::Approx(-24.0));
}

TEST_CASE("lifted_gradient equals loop subset gradient for arbitrary selections") {
  Rng rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.uniform_index(4));
    const auto n = static_cast<Eigen::Index>(3 + rng.uniform_index(12));
    const auto ds = random_dataset(rng, n, d);
    const auto ops = build_lifted(ds);
    Model m;
    m.theta.resize(d);
    for (Eigen::Index j = 0; j < d; ++j) m.theta[j] = rng.uniform(-1.5, 1.5);
    SelectionVector z;
    z.z.resize(static_cast<std::size_t>(n));
    for (auto& b : z.z) b = rng.uniform() < 0.5 ? 1 : 0;
    const auto g = lifted_gradient(ops, m, z);
    const auto go = oracle::subset_gradient(ds, m.theta, z.z);
    for (Eigen::Index j = 0; j < d; ++j)
      CHECK(std::abs(g[j] - go[j]) <= 1e-10 * (1.0 + std::abs(go[j])));
  }
}

TEST_CASE("lifted_gradient edge selections") {
  Rng rng(607);
  const auto ds = random_dataset(rng, 8, 3);
  const auto ops = build_lifted(ds);
  const auto m = model_of({1.0, -2.0, 0.5});

  SelectionVector none;
  none.z.assign(8, 0);
  CHECK(lifted_gradient(ops, m, none).norm() == doctest::Approx(0.0));

  SelectionVector all;
  all.z.assign(8, 1);
  const auto qf = quadratic_terms(ds);
  const auto dense = dense_gradient(qf, m);
  const auto lifted = lifted_gradient(ops, m, all);
  for (Eigen::Index j = 0; j < 3; ++j)
    CHECK(lifted[j] == doctest::Approx(dense[j]).epsilon(1e-12));
}

TEST_CASE("normalized_distance worked examples") {
  CHECK(normalized_distance(model_of({3.0, 4.0}), model_of({0.0, 0.0})) ==
        doctest::Approx(100.0).epsilon(1e-12));
  CHECK(normalized_distance(model_of({3.0, 4.0}), model_of({3.0, 3.0})) ==
        doctest::Approx(20.0).epsilon(1e-12));
  CHECK(normalized_distance(model_of({1.0, 2.0}), model_of({1.0, 2.0})) ==
        doctest::Approx(0.0));
}

TEST_CASE("normalized_distance rejects zero ground truth") {
  CHECK_THROWS_AS(normalized_distance(model_of({0.0, 0.0}), model_of({3.0, 4.0})),
                  InvalidGroundTruth);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto ds = make_dataset({{1.0, 2.0}}, {1.0});
  CHECK_THROWS_AS(residuals(ds, model_of({0.0, 0.0, 0.0})), DimensionError);
  CHECK_THROWS_AS(normalized_distance(model_of({1.0, 1.0}), model_of({1.0, 1.0, 1.0})),
                  DimensionError);
}
