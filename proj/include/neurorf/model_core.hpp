#pragma once

#include <Eigen/Dense>

#include "neurorf/dataset.hpp"

namespace neurorf {

// |y_i - x_i^T theta| per row.
Eigen::VectorXd residuals(const Dataset& dataset, const Model& model);

// Number of rows with residual <= eps_inlier.
long consensus(const Dataset& dataset, const Model& model, double eps_inlier);

// argmin ||X theta - y||_2. Requires N >= d and condition number below
// cond_cap; rank-deficient systems are rejected so callers can resample.
Model solve_ls(const Dataset& dataset, double cond_cap = 1e12);

QuadraticForm quadratic_terms(const Dataset& dataset);

// Q theta + p (gradient of (1/2) theta^T Q theta + p^T theta).
Eigen::VectorXd dense_gradient(const QuadraticForm& qf, const Model& model);

LiftedOperators build_lifted(const Dataset& dataset);

// Qp * (z replicated * theta replicated) + Pp * z. Equals the dense gradient
// restricted to the selected rows, exactly in full precision.
Eigen::VectorXd lifted_gradient(const LiftedOperators& ops, const Model& model,
                                const SelectionVector& z);

// 100 * ||theta_gt - theta_est|| / ||theta_gt||.
double normalized_distance(const Model& theta_gt, const Model& theta_est);

}  // namespace neurorf
