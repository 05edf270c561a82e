#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cliffpart {

using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Matrix matrix_power(Matrix base, long long q) {
  Matrix acc = Matrix::Identity(base.rows(), base.cols());
  while (q > 0) {
    if (q & 1) acc = acc * base;
    q >>= 1;
    if (q) base = base * base;
  }
  return acc;
}

/// Largest entry magnitude; the matrix norm used for all closeness checks.
inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel_dev(const Matrix& got, const Matrix& want) {
  double scale = std::max(1.0, max_abs(want));
  return max_abs(got - want) / scale;
}

}  // namespace cliffpart
