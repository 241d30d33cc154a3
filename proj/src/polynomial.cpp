#include "bk/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace bk {

RealPolynomial::RealPolynomial(Vec ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
  if (coeffs_.size() == 0) throw parameter_error("RealPolynomial: empty coefficients");
  double lead = coeffs_(coeffs_.size() - 1);
  if (std::abs(lead - 1.0) > 1e-9)
    throw parameter_error("RealPolynomial: leading coefficient must be 1");
  coeffs_(coeffs_.size() - 1) = 1.0;
}

RealPolynomial RealPolynomial::from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    c.push_back(0.0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  Vec out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out(k) = c[k].real();
  // complex roots must come in conjugate pairs for a real polynomial
  for (size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k].imag()) > 1e-9 * (1.0 + std::abs(c[k])))
      throw parameter_error("from_roots: roots are not closed under conjugation");
  return RealPolynomial(out);
}

RealPolynomial RealPolynomial::from_real_roots(const std::vector<double>& roots) {
  std::vector<Complex> c(roots.begin(), roots.end());
  return from_roots(c);
}

RealPolynomial RealPolynomial::from_descending(const std::vector<double>& coeffs) {
  Vec c(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) c(coeffs.size() - 1 - k) = coeffs[k];
  return RealPolynomial(c);
}

double RealPolynomial::operator()(double t) const {
  double acc = 0.0;
  for (int k = degree(); k >= 0; --k) acc = acc * t + coeffs_(k);
  return acc;
}

Complex RealPolynomial::operator()(Complex t) const {
  Complex acc = 0.0;
  for (int k = degree(); k >= 0; --k) acc = acc * t + coeffs_(k);
  return acc;
}

double RealPolynomial::derivative_at(double t) const {
  double acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * t + k * coeffs_(k);
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (degree() == 0) throw parameter_error("derivative of a constant is not monic");
  Vec d(degree());
  for (int k = 1; k <= degree(); ++k) d(k - 1) = k * coeffs_(k);
  d /= d(degree() - 1);  // renormalize monic: derivative of monic has lead = degree
  RealPolynomial out(d);
  return out;
}

RealPolynomial RealPolynomial::operator*(const RealPolynomial& q) const {
  Vec c = Vec::Zero(degree() + q.degree() + 1);
  for (int i = 0; i <= degree(); ++i)
    for (int j = 0; j <= q.degree(); ++j) c(i + j) += coeffs_(i) * q.coeffs_(j);
  return RealPolynomial(c);
}

std::pair<RealPolynomial, Vec> RealPolynomial::divide(const RealPolynomial& q) const {
  if (q.degree() > degree()) throw parameter_error("divide: divisor degree too large");
  Vec rem = coeffs_;
  int dq = q.degree();
  Vec quot = Vec::Zero(degree() - dq + 1);
  for (int k = degree(); k >= dq; --k) {
    double f = rem(k);  // q is monic
    quot(k - dq) = f;
    for (int j = 0; j <= dq; ++j) rem(k - dq + j) -= f * q.coeffs_(j);
  }
  Vec remainder = dq > 0 ? Vec(rem.head(dq)) : Vec(Vec::Zero(1));
  return {RealPolynomial(quot), remainder};
}

namespace {

std::vector<Complex> companion_roots(const Vec& c) {
  int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return {};
  CMat comp = CMat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c(i);
  Eigen::ComplexEigenSolver<CMat> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> out(d);
  for (int i = 0; i < d; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

}  // namespace

namespace {

// |p^(j)(t)| for complex t
Complex poly_deriv_at(const Vec& c, Complex t, int j) {
  int d = static_cast<int>(c.size()) - 1;
  Complex acc = 0.0;
  for (int k = d; k >= j; --k) {
    double f = 1.0;
    for (int l = 0; l < j; ++l) f *= k - l;
    acc = acc * t + f * c(k);
  }
  return acc;
}

// normalized derivative magnitude, insensitive to the overall scale of t
double deriv_scale(const Vec& c, Complex t, int j) {
  int d = static_cast<int>(c.size()) - 1;
  double s = std::abs(poly_deriv_at(c, t, j));
  double denom = std::pow(1.0 + std::abs(t), d - j);
  return s / denom;
}

// Does a polished center c plausibly represent an m-fold root?
bool multiplicity_consistent(const Vec& coeffs, Complex c, int m) {
  double scale = std::max(1.0, coeffs.cwiseAbs().maxCoeff());
  for (int j = 0; j < m; ++j)
    if (deriv_scale(coeffs, c, j) > 1e-7 * scale) return false;
  return true;
}

}  // namespace

std::vector<Root> RealPolynomial::roots(double tol_imag, double tol_cluster) const {
  std::vector<Complex> raw = companion_roots(coeffs_);
  std::sort(raw.begin(), raw.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });

  int d = degree();
  std::vector<Root> out;
  std::vector<bool> used(raw.size(), false);
  // try the largest multiplicity first: an m-fold root scatters the companion
  // eigenvalues over a radius ~ eps^(1/m)
  for (int m = d; m >= 1; --m) {
    double adaptive = std::pow(1e-13, 1.0 / m);
    double radius = std::max(tol_cluster, adaptive);
    for (size_t i = 0; i < raw.size(); ++i) {
      if (used[i]) continue;
      std::vector<size_t> members{i};
      for (size_t j = 0; j < raw.size(); ++j) {
        if (j == i || used[j]) continue;
        if (std::abs(raw[j] - raw[i]) <= radius * (1.0 + std::abs(raw[i])))
          members.push_back(j);
      }
      if (static_cast<int>(members.size()) < m) continue;
      // keep the m nearest members
      std::sort(members.begin() + 1, members.end(), [&](size_t a, size_t b) {
        return std::abs(raw[a] - raw[i]) < std::abs(raw[b] - raw[i]);
      });
      members.resize(m);
      Complex center = 0.0;
      for (size_t j : members) center += raw[j];
      center /= static_cast<double>(m);
      // polish: Newton on the (m-1)-th derivative, then verify the multiplicity
      for (int it = 0; it < 6; ++it) {
        Complex f = poly_deriv_at(coeffs_, center, m - 1);
        Complex df = poly_deriv_at(coeffs_, center, m);
        if (std::abs(df) < 1e-300) break;
        center -= f / df;
      }
      if (m > 1 && !multiplicity_consistent(coeffs_, center, m)) continue;
      if (std::abs(center.imag()) <= std::max(tol_imag, (m > 1 ? 1e-9 : 0.0)) * (1.0 + std::abs(center)))
        center = Complex(center.real(), 0.0);
      out.push_back({center, m});
      for (size_t j : members) used[j] = true;
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

std::vector<Root> RealPolynomial::real_roots(double tol_imag, double tol_cluster) const {
  std::vector<Root> all = roots(tol_imag, tol_cluster);
  std::vector<Root> out;
  for (const Root& r : all)
    if (r.is_real()) out.push_back(r);
  return out;
}

Vec elementary_symmetric(const Vec& y) {
  int m = static_cast<int>(y.size());
  Vec e = Vec::Zero(m + 1);
  e(0) = 1.0;
  for (int i = 0; i < m; ++i)
    for (int k = std::min(i + 1, m); k >= 1; --k) e(k) += y(i) * e(k - 1);
  return e.tail(m);
}

RealPolynomial poly_from_symmetric(const Vec& u) {
  int m = static_cast<int>(u.size());
  Vec c(m + 1);
  c(m) = 1.0;
  for (int k = 1; k <= m; ++k) c(m - k) = ((k % 2) ? -1.0 : 1.0) * u(k - 1);
  return RealPolynomial(c);
}

Vec sorted_roots_inverse(const Vec& u, double tol_imag) {
  RealPolynomial p = poly_from_symmetric(u);
  std::vector<Root> rs = p.roots(tol_imag, /*tol_cluster=*/0.0);
  std::vector<double> vals;
  for (const Root& r : rs) {
    if (!r.is_real())
      throw domain_error("sorted_roots_inverse: point is outside the symmetrized image");
    for (int j = 0; j < r.multiplicity; ++j) vals.push_back(r.value.real());
  }
  std::sort(vals.rbegin(), vals.rend());
  Vec out(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) out(i) = vals[i];
  return out;
}

}  // namespace bk
