#include "bk/cell_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bk/classification.hpp"

namespace bk {

bool QuadraticFormEval::positive_definite(double tol) const {
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol;
}

std::vector<FaceFunctional> face_functionals(const RealPolynomial& p_D,
                                             const std::vector<double>& simple_roots, int m) {
  for (size_t i = 0; i < simple_roots.size(); ++i)
    for (size_t j = i + 1; j < simple_roots.size(); ++j)
      if (simple_roots[i] == simple_roots[j])
        throw parameter_error("face_functionals: repeated root in list");
  std::vector<FaceFunctional> out;
  for (double r : simple_roots) {
    double dp = p_D.derivative_at(r);
    if (dp == 0.0) throw parameter_error("face_functionals: root is not simple");
    FaceFunctional f;
    f.root = r;
    f.coeffs = Vec::Zero(m + 1);
    f.coeffs(0) = -std::pow(r, m) / dp;
    for (int k = 1; k <= m; ++k)
      f.coeffs(k) = -std::pow(-1.0, k) * std::pow(r, m - k) / dp;
    out.push_back(f);
  }
  return out;
}

std::vector<FaceFunctional> face_functionals(const RealPolynomial& p_D) {
  int m = p_D.degree() - 2;
  std::vector<Root> rs = p_D.real_roots();
  std::vector<double> simple;
  for (const Root& r : rs) {
    if (r.multiplicity != 1)
      throw parameter_error("face_functionals: p_D has a repeated root");
    simple.push_back(r.value.real());
  }
  if (static_cast<int>(simple.size()) != m + 2)
    throw parameter_error("face_functionals: p_D must have m+2 simple real roots");
  return face_functionals(p_D, simple, m);
}

double classical_sums(const RealPolynomial& p_D, int k) {
  int m = p_D.degree() - 2;
  if (k < -1 || k > m + 2) throw parameter_error("classical_sums: k out of range");
  std::vector<Root> rs = p_D.roots();
  Complex acc = 0.0;
  for (const Root& r : rs) {
    if (r.multiplicity != 1)
      throw parameter_error("classical_sums: p_D has a repeated root");
    if (k == -1 && std::abs(r.value) == 0.0)
      throw parameter_error("classical_sums: k = -1 needs nonzero roots");
    Complex dp = 0.0;
    for (const Root& s : rs)
      if (&s != &r) dp = (dp == 0.0 ? Complex(1.0) : dp) * (r.value - s.value);
    acc += std::pow(r.value, k) / dp;
  }
  return acc.real();
}

QuadraticFormEval S_form_roots(const RealPolynomial& p_D, const Vec& y) {
  int m = static_cast<int>(y.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (y(i) == y(j)) throw error("singular-evaluation", "S_form_roots: coincident y");
  QuadraticFormEval out;
  out.point = y;
  out.matrix = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    double pd = p_D(y(i));
    if (pd == 0.0) throw error("singular-evaluation", "S_form_roots: y hits a root of p_D");
    double num = 1.0;
    for (int j = 0; j < m; ++j)
      if (j != i) num *= y(i) - y(j);
    out.matrix(i, i) = 0.25 * num / pd;
  }
  return out;
}

namespace {

// Jacobian of sigma: d sigma_k / d y_i = sigma_{k-1}(y with y_i removed)
Mat sigma_jacobian(const Vec& y) {
  int m = static_cast<int>(y.size());
  Mat J(m, m);
  for (int i = 0; i < m; ++i) {
    Vec rest(m - 1);
    int idx = 0;
    for (int j = 0; j < m; ++j)
      if (j != i) rest(idx++) = y(j);
    Vec e = elementary_symmetric(rest);
    J(0, i) = 1.0;
    for (int k = 1; k < m; ++k) J(k, i) = e(k - 1);
  }
  return J;
}

}  // namespace

QuadraticFormEval R_D_sym(const RealPolynomial& p_D, const Vec& u, const MomentumCell& cell) {
  if (cell_membership(cell, u) != Membership::interior)
    throw domain_error("R_D_sym: u is not interior to the cell");
  Vec y = sorted_roots_inverse(u);
  QuadraticFormEval S = S_form_roots(p_D, y);
  Mat J = sigma_jacobian(y);
  Mat Jinv = J.inverse();
  QuadraticFormEval out;
  out.point = u;
  out.matrix = Jinv.transpose() * S.matrix * Jinv;
  out.matrix = ((out.matrix + out.matrix.transpose()) / 2.0).eval();
  return out;
}

namespace {

struct ComplexFace {
  Complex root;
  CVec coeffs;  // constant term first
  Complex at(const Vec& u) const {
    Complex acc = coeffs(0);
    for (int k = 0; k < u.size(); ++k) acc += coeffs(k + 1) * u(k);
    return acc;
  }
};

// l_a over all m+2 roots, complex ones included (conjugate pairs combine to
// real expressions in the sums below)
std::vector<ComplexFace> all_faces(const RealPolynomial& p_D) {
  int m = p_D.degree() - 2;
  std::vector<Root> rs = p_D.roots();
  std::vector<ComplexFace> out;
  for (const Root& r : rs) {
    if (r.multiplicity != 1)
      throw parameter_error("cell_metric: p_D root is not simple");
    Complex dp = 1.0;
    for (const Root& s : rs)
      if (&s != &r) dp *= r.value - s.value;
    ComplexFace f;
    f.root = r.value;
    f.coeffs = CVec::Zero(m + 1);
    f.coeffs(0) = -std::pow(r.value, m) / dp;
    for (int k = 1; k <= m; ++k)
      f.coeffs(k) = -std::pow(Complex(-1.0), k) * std::pow(r.value, m - k) / dp;
    out.push_back(f);
  }
  return out;
}

}  // namespace

QuadraticFormEval R_D_faces(const RealPolynomial& p_D, const Vec& u) {
  int m = p_D.degree() - 2;
  std::vector<FaceFunctional> faces = face_functionals(p_D);  // enforces real simple roots
  QuadraticFormEval out;
  out.point = u;
  out.matrix = Mat::Zero(m, m);
  double uscale = 1.0 + u.cwiseAbs().maxCoeff();
  for (const FaceFunctional& f : faces) {
    double l = f(u);
    if (std::abs(l) < 1e-12 * uscale)
      throw error("boundary-singularity", "R_D_faces: a face functional vanishes at u");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.matrix(i, j) += f.coeffs(i + 1) * f.coeffs(j + 1) / (4.0 * l);
  }
  return out;
}

double potential_G(const RealPolynomial& p_D, const Vec& u) {
  std::vector<ComplexFace> faces = all_faces(p_D);
  Complex acc = 0.0;
  for (const ComplexFace& f : faces) {
    Complex l = f.at(u);
    if (std::abs(l) == 0.0)
      throw error("boundary-singularity", "potential_G: a face functional vanishes at u");
    acc += l * (std::log(l) - 1.0);
  }
  return 0.25 * acc.real();
}

Vec potential_G_gradient(const RealPolynomial& p_D, const Vec& u) {
  int m = p_D.degree() - 2;
  std::vector<ComplexFace> faces = all_faces(p_D);
  CVec acc = CVec::Zero(m);
  for (const ComplexFace& f : faces) {
    Complex l = f.at(u);
    if (std::abs(l) == 0.0)
      throw error("boundary-singularity", "potential_G_gradient: face vanishes at u");
    for (int i = 0; i < m; ++i) acc(i) += f.coeffs(i + 1) * std::log(l);
  }
  return 0.25 * acc.real();
}

QuadraticFormEval R_case31(const RealPolynomial& p_D, const Vec& u) {
  int m = p_D.degree() - 2;
  std::vector<Root> rs = p_D.real_roots();
  if (rs.empty() || rs.front().multiplicity != 2)
    throw parameter_error("R_case31: largest root of p_D must be double");
  double r1 = rs.front().value.real();
  std::vector<double> simple;
  for (size_t i = 1; i < rs.size(); ++i) {
    if (rs[i].multiplicity != 1)
      throw parameter_error("R_case31: trailing roots must be simple");
    simple.push_back(rs[i].value.real());
  }
  if (static_cast<int>(simple.size()) != m)
    throw parameter_error("R_case31: root pattern is not Case 3-1");

  std::vector<FaceFunctional> faces = face_functionals(p_D, simple, m);
  // a = 1 - sum (r_1 - r_a) l_a,  t = sum l_a ; both affine in u
  Vec da = Vec::Zero(m), dt = Vec::Zero(m);
  double a = 1.0, t = 0.0;
  std::vector<double> lvals;
  for (const FaceFunctional& f : faces) {
    double l = f(u);
    lvals.push_back(l);
    a -= (r1 - f.root) * l;
    t += l;
    for (int i = 0; i < m; ++i) {
      da(i) -= (r1 - f.root) * f.coeffs(i + 1);
      dt(i) += f.coeffs(i + 1);
    }
  }
  if (!(a > 0.0)) throw domain_error("R_case31: a(u) <= 0");

  QuadraticFormEval out;
  out.point = u;
  out.matrix = (t / (4.0 * a * a)) * (da * da.transpose());
  out.matrix -= (da * dt.transpose() + dt * da.transpose()) / (4.0 * a);
  for (size_t k = 0; k < faces.size(); ++k) {
    if (std::abs(lvals[k]) < 1e-14 * (1.0 + u.cwiseAbs().maxCoeff()))
      throw error("boundary-singularity", "R_case31: face vanishes at u");
    const Vec grad = faces[k].coeffs.tail(m);
    out.matrix += (grad * grad.transpose()) / (4.0 * lvals[k]);
  }
  return out;
}

QuadraticFormEval resolution_Rrho(const Vec& rho, const Vec& p) {
  int m = static_cast<int>(rho.size());
  if (p.size() != m) throw parameter_error("resolution_Rrho: dimension mismatch");
  for (int i = 0; i < m; ++i)
    if (rho(i) < 0.0) throw parameter_error("resolution_Rrho: rho must be nonnegative");
  double abar = 1.0;
  for (int i = 0; i < m; ++i) abar -= rho(i) * p(i) * p(i);
  if (!(abar > 0.0)) throw domain_error("resolution_Rrho: point outside the ellipsoid");
  double tbar = p.squaredNorm();
  Vec da = -2.0 * rho.cwiseProduct(p);
  Vec dt = 2.0 * p;

  QuadraticFormEval out;
  out.point = p;
  out.matrix = (tbar / (4.0 * abar * abar)) * (da * da.transpose());
  out.matrix -= (da * dt.transpose() + dt * da.transpose()) / (4.0 * abar);
  out.matrix += Mat::Identity(m, m);
  return out;
}

namespace {

double form_length_element(const MomentumCell& cell, const Vec& u, const Vec& du) {
  QuadraticFormEval R = R_D_sym(cell.p_D, u, cell);
  double q = du.dot(R.matrix * du);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

}  // namespace

double arc_length_diag(const MomentumCell& cell, const Vec& from, const Vec& to, int steps) {
  Vec dir = to - from;
  if (dir.norm() == 0.0) return 0.0;
  // open composite midpoint rule: tolerates integrable sqrt singularities at
  // the segment endpoints (cell boundary)
  double acc = 0.0;
  for (int i = 0; i < steps; ++i) {
    double s = (i + 0.5) / steps;
    Vec u = from + s * dir;
    if (cell_membership(cell, u) != Membership::interior)
      throw domain_error("arc_length_diag: segment leaves the cell interior");
    acc += form_length_element(cell, u, dir) / steps;
  }
  return acc;
}

double arc_length_ray(const MomentumCell& cell, const Vec& from, const Vec& dir,
                      double param_cap, double length_cap) {
  // geometric parameter refinement toward infinity: s in [0, param_cap)
  double acc = 0.0;
  double s = 0.0;
  double step = 1e-3;
  while (s < param_cap && acc < length_cap) {
    double mid = s + step / 2.0;
    Vec u = from + mid * dir;
    if (cell_membership(cell, u) != Membership::interior) {
      // shrink onto the boundary instead of stepping over it
      step /= 2.0;
      if (step < 1e-14 * (1.0 + s)) break;
      continue;
    }
    acc += form_length_element(cell, u, dir) * step;
    s += step;
    step *= 1.05;  // stretch steps; integrand decays on unbounded cells
  }
  return acc;
}

}  // namespace bk
