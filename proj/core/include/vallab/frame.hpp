#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace vallab {

/// Orthonormal basis of a k-dimensional subspace of R^n, i.e. a point of the
/// Grassmannian Gr_k carried by a concrete frame representative. Quantities
/// defined on subspaces (principal cosines, highest-weight vectors, ...) must
/// not depend on the representative.
class Frame {
 public:
  Frame(int n, int k, Eigen::MatrixXd columns) : n_(n), k_(k), columns_(std::move(columns)) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("Frame: invalid rank");
    if (columns_.rows() != n || columns_.cols() != k)
      throw std::invalid_argument("Frame: shape mismatch");
    if (k > 0) {
      Eigen::MatrixXd gram = columns_.transpose() * columns_;
      double dev = (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
      if (dev > 1e-10) throw std::invalid_argument("Frame: columns not orthonormal");
    }
  }

  int n() const { return n_; }
  int k() const { return k_; }
  const Eigen::MatrixXd& columns() const { return columns_; }

  static Frame identity(int n, int k) {
    return Frame(n, k, Eigen::MatrixXd::Identity(n, n).leftCols(k));
  }

  static Frame span(std::initializer_list<int> axes, int n) {
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, static_cast<int>(axes.size()));
    int j = 0;
    for (int a : axes) cols(a, j++) = 1.0;
    return Frame(n, static_cast<int>(axes.size()), cols);
  }

 private:
  int n_;
  int k_;
  Eigen::MatrixXd columns_;
};

}  // namespace vallab
