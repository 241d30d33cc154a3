#pragma once

#include <vector>

#include "bk/structure_space.hpp"
#include "bk/types.hpp"

namespace bk {

/// Structure-function samples along a geodesic direction.
struct StructurePath {
  std::vector<double> s;                // arc length, strictly increasing
  std::vector<StructurePoint> points;
  CVec direction;                       // unit vector w
  double max_symmetrization_defect = 0.0;  // pre-symmetrization Hermitian defect
};

/// RK4 integration of
///   H' = T w* + w T*,
///   T' = (H^2 + (tr H) H + V I) w,
///   V' = (tr H)(T* w + w* T) + (T* H w + w* H T).
StructurePath integrate(const StructurePoint& p0, const CVec& w, double length, double h,
                        double blowup_ceiling = 1e8);

/// Max over samples and k of |C_k(sample) - C_k(start)|.
double conserved_drift(const StructurePath& path);

struct ConstantFactorReport {
  RealPolynomial p_hpp;           // constant factor fixed at the start point
  double max_coeff_residual = 0;  // remainder of p_h(s) / p_hpp over the path
  double max_root_drift = 0;      // drift of the designated eigenvalues
  bool vacuous = false;           // p_hpp = 1
};

/// Checks that the start point's constant factor p_h'' divides p_h along the
/// path. The direction must satisfy the admissibility conditions (T_a* w real;
/// w orthogonal to clusters with T_a = V_a = 0); otherwise a precondition
/// error is thrown.
ConstantFactorReport constant_factor_check(const StructurePath& path,
                                           const Tolerances& tol = {});

/// A unit direction satisfying the admissibility conditions at p, built from a
/// real seed vector expressed in the chamber frame.
CVec admissible_direction(const StructurePoint& p, const Vec& seed, const Tolerances& tol = {});

}  // namespace bk
