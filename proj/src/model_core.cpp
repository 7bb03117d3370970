#include "neurorf/model_core.hpp"

#include <cmath>
#include <sstream>

namespace neurorf {

namespace {

void check_dims(const Dataset& dataset, const Model& model) {
  dataset.validate();
  if (model.theta.size() != dataset.d())
    throw DimensionError("model dimension does not match dataset");
}

}  // namespace

Eigen::VectorXd residuals(const Dataset& dataset, const Model& model) {
  check_dims(dataset, model);
  return (dataset.y - dataset.X * model.theta).cwiseAbs();
}

long consensus(const Dataset& dataset, const Model& model, double eps_inlier) {
  const Eigen::VectorXd r = residuals(dataset, model);
  long count = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r[i] <= eps_inlier) ++count;
  return count;
}

Model solve_ls(const Dataset& dataset, double cond_cap) {
  dataset.validate();
  if (dataset.N() < dataset.d())
    throw InsufficientPoints("solve_ls: fewer rows than parameters");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dataset.X);
  const Eigen::Index d = dataset.d();
  const auto& R = qr.matrixR();
  const double rmax = std::abs(R(0, 0));
  const double rmin = std::abs(R(d - 1, d - 1));
  if (rmin == 0.0 || rmax / rmin > cond_cap)
    throw DegenerateSubset("solve_ls: rank-deficient or ill-conditioned X");
  return Model{qr.solve(dataset.y)};
}

QuadraticForm quadratic_terms(const Dataset& dataset) {
  dataset.validate();
  return QuadraticForm{dataset.X.transpose() * dataset.X,
                       -dataset.X.transpose() * dataset.y};
}

Eigen::VectorXd dense_gradient(const QuadraticForm& qf, const Model& model) {
  if (qf.Q.rows() != qf.Q.cols() || qf.Q.rows() != model.theta.size() ||
      qf.p.size() != model.theta.size())
    throw DimensionError("dense_gradient: inconsistent dimensions");
  return qf.Q * model.theta + qf.p;
}

ReplicationStencil repeat_each_stencil(Eigen::Index n, Eigen::Index d) {
  ReplicationStencil s;
  s.src.resize(static_cast<std::size_t>(n * d));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      s.src[static_cast<std::size_t>(i * d + j)] = i;
  return s;
}

ReplicationStencil tile_whole_stencil(Eigen::Index n, Eigen::Index d) {
  ReplicationStencil s;
  s.src.resize(static_cast<std::size_t>(n * d));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      s.src[static_cast<std::size_t>(i * d + j)] = j;
  return s;
}

LiftedOperators build_lifted(const Dataset& dataset) {
  dataset.validate();
  const Eigen::Index n = dataset.N();
  const Eigen::Index d = dataset.d();
  LiftedOperators ops;
  ops.Qp.resize(d, n * d);
  ops.Pp.resize(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = dataset.X.row(i).transpose();
    ops.Qp.block(0, i * d, d, d) = xi * xi.transpose();
    ops.Pp.col(i) = -dataset.y[i] * xi;
  }
  ops.Fd = repeat_each_stencil(n, d);
  ops.FN = tile_whole_stencil(n, d);
  return ops;
}

Eigen::VectorXd lifted_gradient(const LiftedOperators& ops, const Model& model,
                                const SelectionVector& z) {
  const Eigen::Index d = ops.Pp.rows();
  const Eigen::Index n = ops.Pp.cols();
  if (model.theta.size() != d || static_cast<Eigen::Index>(z.z.size()) != n ||
      ops.Qp.rows() != d || ops.Qp.cols() != n * d)
    throw DimensionError("lifted_gradient: inconsistent dimensions");
  const Eigen::VectorXd zr = z.as_real();
  const Eigen::VectorXd theta_prime =
      ops.Fd.apply(zr).cwiseProduct(ops.FN.apply(model.theta));
  return ops.Qp * theta_prime + ops.Pp * zr;
}

double normalized_distance(const Model& theta_gt, const Model& theta_est) {
  if (theta_gt.theta.size() != theta_est.theta.size())
    throw DimensionError("normalized_distance: dimension mismatch");
  const double gt_norm = theta_gt.theta.norm();
  if (gt_norm <= 0.0)
    throw InvalidGroundTruth("normalized_distance: zero ground-truth norm");
  return 100.0 * (theta_gt.theta - theta_est.theta).norm() / gt_norm;
}

}  // namespace neurorf
