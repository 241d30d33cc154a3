#pragma once

#include <utility>
#include <vector>

#include "bk/types.hpp"

namespace bk {

/// A root with its clustered multiplicity. Real roots carry imag == 0 exactly.
struct Root {
  Complex value;
  int multiplicity = 1;
  bool is_real() const { return value.imag() == 0.0; }
};

/// Monic real-coefficient polynomial. Coefficients are stored ascending:
/// p(t) = c[0] + c[1] t + ... + c[d] t^d with c[d] == 1.
class RealPolynomial {
 public:
  RealPolynomial() { coeffs_ = Vec::Ones(1); }  // the constant 1
  explicit RealPolynomial(Vec ascending_coeffs);

  static RealPolynomial from_roots(const std::vector<Complex>& roots);
  static RealPolynomial from_real_roots(const std::vector<double>& roots);
  /// Parse from a descending coefficient list (1, c_{d-1}, ..., c_0).
  static RealPolynomial from_descending(const std::vector<double>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Vec& coeffs() const { return coeffs_; }
  double coeff(int k) const { return k <= degree() ? coeffs_(k) : 0.0; }

  double operator()(double t) const;
  Complex operator()(Complex t) const;
  double derivative_at(double t) const;
  RealPolynomial derivative() const;

  RealPolynomial operator*(const RealPolynomial& q) const;
  /// Euclidean division p = q * quotient + remainder; quotient is monic.
  /// Throws if deg q > deg p.
  std::pair<RealPolynomial, Vec> divide(const RealPolynomial& q) const;

  /// All roots via the companion matrix, clustered into multiplicities.
  /// Real-root detection: |Im| <= tol_imag * (1 + |root|). Clustering for an
  /// m-fold candidate uses max(tol_cluster, eps^(1/m))-scaled radii, confirmed
  /// by a derivative smallness test, then the center is Newton-polished.
  std::vector<Root> roots(double tol_imag = 1e-8, double tol_cluster = 1e-8) const;
  /// Real roots only, descending, with multiplicities.
  std::vector<Root> real_roots(double tol_imag = 1e-8, double tol_cluster = 1e-8) const;

 private:
  Vec coeffs_;
};

/// Elementary symmetric functions sigma_1..sigma_m of the entries of y.
Vec elementary_symmetric(const Vec& y);

/// Inverse of elementary_symmetric on descending tuples: the roots of
/// t^m - u_1 t^{m-1} + ... + (-1)^m u_m, sorted descending. Throws a domain
/// error when any root is genuinely complex.
Vec sorted_roots_inverse(const Vec& u, double tol_imag = 1e-8);

/// The monic polynomial t^m - u_1 t^{m-1} + ... + (-1)^m u_m.
RealPolynomial poly_from_symmetric(const Vec& u);

}  // namespace bk
