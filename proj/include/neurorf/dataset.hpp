#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "neurorf/errors.hpp"

namespace neurorf {

// N measurement rows: X stacks the feature row-vectors, y holds the targets.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;

  Eigen::Index N() const { return X.rows(); }
  Eigen::Index d() const { return X.cols(); }

  // N >= 1, d >= 1, all entries finite, X/y row counts agree.
  void validate() const {
    if (X.rows() < 1 || X.cols() < 1) throw DimensionError("dataset: empty X");
    if (y.size() != X.rows())
      throw DimensionError("dataset: y length does not match X rows");
    if (!X.allFinite() || !y.allFinite())
      throw DimensionError("dataset: non-finite entries");
  }
};

struct Model {
  Eigen::VectorXd theta;
};

// Q = X^T X, p = -X^T y; the fitting objective is (1/2) theta^T Q theta + p^T theta.
struct QuadraticForm {
  Eigen::MatrixXd Q;
  Eigen::VectorXd p;
};

// Index map realizing a replication pattern: out[m] = in[src[m]].
struct ReplicationStencil {
  std::vector<Eigen::Index> src;

  Eigen::VectorXd apply(const Eigen::VectorXd& in) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(src.size()));
    for (std::size_t m = 0; m < src.size(); ++m)
      out[static_cast<Eigen::Index>(m)] = in[src[m]];
    return out;
  }
};

// length-N input, output index (i,j) -> in[i]: each element repeated d times.
ReplicationStencil repeat_each_stencil(Eigen::Index n, Eigen::Index d);
// length-d input, output index (i,j) -> in[j]: whole vector tiled N times.
ReplicationStencil tile_whole_stencil(Eigen::Index n, Eigen::Index d);

// Constant synaptic operators of the lifted gradient.
// Qp block i (columns [i*d, (i+1)*d)) is x_i x_i^T; Pp column i is -y_i x_i.
// Flattening contract: the auxiliary index for (point i, coordinate j),
// both 0-based, is i*d + j.
struct LiftedOperators {
  Eigen::MatrixXd Qp;  // d x (N*d)
  Eigen::MatrixXd Pp;  // d x N
  ReplicationStencil Fd;  // replicates a length-N vector d-fold (repeat-each)
  ReplicationStencil FN;  // replicates a length-d vector N-fold (tile-whole)
};

// Binary point-selection state; entries are 0 or 1.
struct SelectionVector {
  std::vector<std::uint8_t> z;

  Eigen::VectorXd as_real() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = z[i] ? 1.0 : 0.0;
    return v;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : z) c += b ? 1 : 0;
    return c;
  }
};

}  // namespace neurorf
