#pragma once

#include <optional>
#include <vector>

#include "bk/cell_metric.hpp"
#include "bk/classification.hpp"
#include "bk/metric_field.hpp"
#include "bk/polynomial.hpp"
#include "bk/types.hpp"

namespace bk {

// ===== rotationally symmetric family (profile x solves t x' = x(1+kx+ax^2)) =====

enum class RotSymBranch { type_one, type_two };

struct RotSymParams {
  int n = 2;
  double k = 0.0;
  double a = 0.0;
  RotSymBranch branch = RotSymBranch::type_one;
};

struct RotSymProfile {
  double x = 0.0;        // x(t) = t f'(t)
  double f_prime = 0.0;  // x / t, with the t = 0 limit 1 on type one
};

/// Domain of t = |z|^2 for the branch: [lo, hi) with hi possibly infinite.
struct RotSymDomain {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

RotSymDomain rotsym_domain(const RotSymParams& params);
RotSymProfile rotsym_profile(const RotSymParams& params, double t);
MetricField rotsym_metric(const RotSymParams& params);

/// Closed-form Ricci eigenvalues (rho_1 with multiplicity n-1, rho_2 radial).
std::pair<double, double> rotsym_ricci_eigs(const RotSymParams& params, const CVec& z);

/// Radial arc length between t0 and t1 along the profile.
double rotsym_arclength(const RotSymParams& params, double t0, double t1);
/// Arc length from t0 outward toward the domain end, stopped at length_cap.
double rotsym_arclength_capped(const RotSymParams& params, double t0, double length_cap);

// ===== the complete g_rho family on C^n =====

/// Unique s >= 0 with s = sum e^{-rho_i s} |z_i|^2.
double grho_s(const CVec& z, const Vec& rho);
MetricField grho_metric(const Vec& rho);

// ===== weighted projective metrics (affine chart, m = len(rho) - 1) =====

/// Unique s in (0, 1] with s + sum_{a>=2} |z_a|^2 s^{rho_a/rho_1} = 1.
double wps_s(const CVec& z, const Vec& rho);
MetricField wps_metric(const Vec& rho);

// ===== Hessian leaf chart over a momentum cell =====

struct LeafChart {
  MomentumCell cell;
  /// metric blocks at interior u: R_D^{jk} du du + (R_D^{-1})_{jk} dtheta dtheta
  QuadraticFormEval metric_uu(const Vec& u) const;
  QuadraticFormEval metric_thth(const Vec& u) const;
  /// complex chart z_j = dG/du_j + i theta_j; inverse Legendre map
  Vec u_from_gradient(const Vec& x, const Vec& u_guess) const;
  MetricField field() const;
  Vec u_seed;  // interior point used to seed Newton
};

LeafChart leaf_metric(const MomentumCell& cell, const Vec& u_interior);

// ===== dimension-1 family =====

struct Dim1Component {
  std::string name;    // "GammaC", "GammaC_a", "GammaC_b", "GammaC_0", "GammaC_1", "point"
  double lo = 0.0;     // H-interval with p(H) > 0 (lo may be -inf? not here)
  double hi = 0.0;     // +inf allowed
  bool bounded = false;
};

struct Dim1Family {
  double C2 = 0.0, C3 = 0.0;
  RealPolynomial p;              // t^3 + C2 t + C3
  std::vector<double> roots;     // distinct real roots, descending
  std::vector<int> mult;
  std::string case_tag;          // "Case1", "Case2", "Case3-1", "Case3-2", "Case4"
  std::vector<Dim1Component> components;
  /// period tau_i = +-pi/p'(r_i) at simple roots adjacent to a component, > 0
  std::vector<std::pair<double, double>> periods;  // (root, period)
};

Dim1Family dim1_suite(double C2, double C3);

/// Metric g = dH^2/(4p) + 4p dtheta^2 as a 1-complex-dimensional chart:
/// zeta = integral dH/(2p) + 2i theta from the base point H0; G(zeta) = p(H).
MetricField dim1_metric_chart(double C2, double C3, double H0);
/// H as a function of the chart coordinate's real part.
double dim1_H_of_chart(double C2, double C3, double H0, double re_zeta);

/// Gaussian curvature of g at H computed from the closed-form metric (-2 p'').
double dim1_gauss_curvature(double C2, double C3, double H);
/// Cone-angle fit: the theta-period making the metric smooth at simple root r.
double dim1_period_fit(double C2, double C3, double r);

}  // namespace bk
