#include "reuleaux/block_matrix.hpp"

#include <iomanip>
#include <ostream>

namespace reuleaux {

BlockMatrix BlockMatrix::from_dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(Errc::InvalidInput, "block matrix must be square with even dimension");
  }
  BlockMatrix out(static_cast<int>(m.rows() / 2));
  out.m_ = m;
  return out;
}

double BlockMatrix::quadratic_form(const PerturbationField& w) const {
  if (static_cast<int>(w.size()) != n_) throw Error(Errc::InvalidInput, "field size mismatch");
  const Eigen::VectorXd v = w.flatten();
  return v.dot(m_ * v);
}

double BlockMatrix::asymmetry() const {
  if (n_ == 0) return 0.0;
  return (m_ - m_.transpose()).cwiseAbs().maxCoeff();
}

double BlockMatrix::max_abs_diff(const BlockMatrix& other) const {
  if (other.n_ != n_) throw Error(Errc::InvalidInput, "block matrix size mismatch");
  if (n_ == 0) return 0.0;
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& other) {
  if (other.n_ != n_) throw Error(Errc::InvalidInput, "block matrix size mismatch");
  m_ += other.m_;
  return *this;
}

BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) {
  a += b;
  return a;
}

void BlockMatrix::write_csv(std::ostream& out) const {
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < m_.rows(); ++r) {
    for (Eigen::Index c = 0; c < m_.cols(); ++c) {
      if (c) out << ',';
      out << m_(r, c);
    }
    out << '\n';
  }
}

}  // namespace reuleaux
