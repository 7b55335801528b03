#pragma once

#include <random>

#include "teleclone/linalg.hpp"

namespace teleclone::testutil {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x7e1ec10e);
  return gen;
}

inline ComplexMatrix random_matrix(long dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j)
      m(i, j) = Complex(gauss(rng()), gauss(rng()));
  return m;
}

inline ComplexMatrix random_psd(long dim) {
  ComplexMatrix g = random_matrix(dim);
  return g * g.adjoint();
}

inline ComplexMatrix random_density(long dim) {
  ComplexMatrix p = random_psd(dim);
  return p / p.trace();
}

// Haar-random unitary via QR of a Ginibre matrix.
inline ComplexMatrix random_unitary(long dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(dim));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace teleclone::testutil
