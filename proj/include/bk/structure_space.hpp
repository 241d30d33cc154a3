#pragma once

#include <vector>

#include "bk/polynomial.hpp"
#include "bk/types.hpp"

namespace bk {

/// Chamber representative: H real diagonal nonincreasing, T real >= 0 with
/// zeros on trailing slots of each eigenvalue cluster.
struct ChamberForm {
  StructurePoint point;
  CMat unitary;  // the a with unitary_act(p, a) == point
};

/// Acts by (H, T, V) -> (a H a*, a T, V); rejects non-unitary a.
StructurePoint unitary_act(const StructurePoint& p, const CMat& a, const Tolerances& tol = {});

/// Homothety action: (H, T, V) -> (H/c, T/c^{3/2}, V/c^2), c > 0.
StructurePoint scale(const StructurePoint& p, double c);

/// The unique chamber representative of the U(n)-orbit of p.
ChamberForm normal_form(const StructurePoint& p, const Tolerances& tol = {});

/// The 2n+1 orbit-separating invariants.
InvariantVector invariants_phi(const StructurePoint& p);

/// Power sums A_1..A_n -> elementary symmetric h_1..h_n
/// (coefficients of 1 + h_1 t + ... + h_n t^n = exp(A_1 t - A_2 t^2/2 + ...)).
Vec newton_to_elementary(const Vec& A);
/// Inverse of newton_to_elementary.
Vec elementary_to_newton(const Vec& h);

/// Conserved quantities C_k = sum_j (-1)^j h_j B_{k-j}, k = 2..n+2, with
/// B_0 = 1, B_1 = tr H, B_2 = V, B_k = T* H^{k-3} T.
ConservedVector conserved_Ck(const StructurePoint& p);

/// Momentum values h_k = k-th elementary symmetric function of the eigenvalues of H.
Vec momentum_h(const StructurePoint& p);

/// Momentum polynomial p_h(t) = det(t I - H).
RealPolynomial momentum_poly(const StructurePoint& p);

struct SymmetryDims {
  int dim_g0 = 0;       // isotropy dimension
  int dim_g = 0;        // full symmetry algebra dimension (>= n)
  int orbit_dim = 0;    // dimension of the local symmetry orbit
  int cohomogeneity = 0;
};

/// Symmetry dimension counts from the spectral data of (H, T, V).
SymmetryDims symmetry_dims(const StructurePoint& p, const Tolerances& tol = {});

/// Canonical rescaling making the largest weight-normalized invariant equal 1.
/// Identity on the zero point.
StructurePoint scale_normalize(const StructurePoint& p);

/// Weight-normalized copy of momentum values (h_k has scaling weight k).
Vec scale_normalize_h(const Vec& h);

}  // namespace bk
