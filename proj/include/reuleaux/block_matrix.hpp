#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "reuleaux/point.hpp"

namespace reuleaux {

/// n x n grid of 2x2 blocks, stored densely as a 2n x 2n matrix. Block (i, j)
/// couples the coordinates of point i with those of point j.
class BlockMatrix {
 public:
  explicit BlockMatrix(int n = 0) : n_(n), m_(Eigen::MatrixXd::Zero(2 * n, 2 * n)) {}
  static BlockMatrix from_dense(const Eigen::MatrixXd& m);

  int size() const noexcept { return n_; }
  Mat2 block(int i, int j) const { return m_.block<2, 2>(2 * i, 2 * j); }
  void add_block(int i, int j, const Mat2& b) { m_.block<2, 2>(2 * i, 2 * j) += b; }
  void set_block(int i, int j, const Mat2& b) { m_.block<2, 2>(2 * i, 2 * j) = b; }

  const Eigen::MatrixXd& dense() const noexcept { return m_; }
  Eigen::MatrixXd& dense() noexcept { return m_; }

  /// w^T M w for a field with one vector per point.
  double quadratic_form(const PerturbationField& w) const;
  /// max |M - M^T|
  double asymmetry() const;
  /// max |M - other| entrywise.
  double max_abs_diff(const BlockMatrix& other) const;

  BlockMatrix& operator+=(const BlockMatrix& other);

  /// Dense 2n x 2n CSV, full precision.
  void write_csv(std::ostream& out) const;

 private:
  int n_;
  Eigen::MatrixXd m_;
};

BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b);

}  // namespace reuleaux
