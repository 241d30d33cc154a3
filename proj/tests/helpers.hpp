#pragma once

#include <random>

#include "bk/types.hpp"

namespace bk::testing {

inline std::mt19937& rng(unsigned seed = 0) {
  static std::mt19937 gen(12345);
  if (seed) gen.seed(seed);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline CMat random_complex(int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(d(rng()), d(rng()));
  return m;
}

inline CMat random_hermitian(int n, double scale = 1.0) {
  CMat m = random_complex(n, n, scale);
  return (m + m.adjoint()) / 2.0;
}

inline CMat random_unitary(int n) {
  CMat m = random_complex(n, n);
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  // fix phases so the factorization is unique-ish (not needed, but cheap)
  return q;
}

inline CVec random_cvec(int n, double scale = 1.0) {
  return random_complex(n, 1, scale).col(0);
}

inline StructurePoint random_point(int n, double scale = 1.0) {
  return StructurePoint(random_hermitian(n, scale), random_cvec(n, scale),
                        uniform(-scale, scale));
}

}  // namespace bk::testing
