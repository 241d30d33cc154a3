#pragma once

#include <vector>

#include "bk/polynomial.hpp"
#include "bk/types.hpp"

namespace bk {

struct FaceFunctional;
struct MomentumCell;

/// Value of a quadratic form at a point: symmetric coefficient matrix.
struct QuadraticFormEval {
  Vec point;
  Mat matrix;
  bool positive_definite(double tol = 0.0) const;
};

/// Face functionals l_a(u) = -(r^m - r^{m-1} u_1 + ... + (-1)^m u_m) / p_D'(r)
/// at the listed simple roots of p_D. Rejects repeated roots in the list.
std::vector<FaceFunctional> face_functionals(const RealPolynomial& p_D,
                                             const std::vector<double>& simple_roots, int m);
/// Convenience: all roots of p_D must be simple; m = deg - 2.
std::vector<FaceFunctional> face_functionals(const RealPolynomial& p_D);

/// sum_a r_a^k / p_D'(r_a) over the m+2 simple roots; k in [-1, m+2].
double classical_sums(const RealPolynomial& p_D, int k);

/// Diagonal root-coordinate form S = 1/4 sum_i [prod_{j!=i}(y_i - y_j)/p_D(y_i)] dy_i^2.
QuadraticFormEval S_form_roots(const RealPolynomial& p_D, const Vec& y);

/// Cell metric R_D at u in symmetric coordinates (pullback of S through sigma).
QuadraticFormEval R_D_sym(const RealPolynomial& p_D, const Vec& u, const MomentumCell& cell);

/// Face-coordinate expression R_D = sum_a dl_a^2 / (4 l_a); requires all roots
/// of p_D real and simple. Throws a boundary-singularity error when some l_a = 0.
QuadraticFormEval R_D_faces(const RealPolynomial& p_D, const Vec& u);

/// Potential G with Hessian(G) = R_D. Handles a complex-conjugate root pair by
/// combining the pair into a real expression.
double potential_G(const RealPolynomial& p_D, const Vec& u);
/// Gradient of the potential (analytic, via dG = sum l_a log|l_a| dl_a / 4).
Vec potential_G_gradient(const RealPolynomial& p_D, const Vec& u);

/// Case 3-1 limit form R_D = t da^2/(4a^2) - da dt/(2a) + sum_{a>=2} dl_a^2/(4 l_a),
/// with a(u) = 1 - sum (r_1 - r_a) l_a and t(u) = sum l_a.
QuadraticFormEval R_case31(const RealPolynomial& p_D, const Vec& u);

/// Resolved metric R_rho on the ellipsoid sum rho_a p_a^2 < 1.
QuadraticFormEval resolution_Rrho(const Vec& rho, const Vec& p);

/// Numerical R_D-length of the straight segment [from, to] inside the cell.
double arc_length_diag(const MomentumCell& cell, const Vec& from, const Vec& to,
                       int steps = 2000);

/// Length along the ray from `from` in direction `dir`, capped: integrates the
/// R_D element of arc until the accumulated length exceeds `length_cap` or the
/// parameter exceeds `param_cap`; returns min(length, cap overshoot).
double arc_length_ray(const MomentumCell& cell, const Vec& from, const Vec& dir,
                      double param_cap, double length_cap);

}  // namespace bk
