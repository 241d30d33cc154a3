#pragma once

#include <string>
#include <vector>

#include "bk/polynomial.hpp"
#include "bk/structure_space.hpp"
#include "bk/types.hpp"

namespace bk {

/// Eigenvalue clusters of H with the projected |T_a|^2, V_a and the local
/// symmetry counts m_a, tau_a, rho_a.
struct SpectralData {
  struct Cluster {
    double H = 0.0;      // eigenvalue
    int n = 1;           // multiplicity
    double Tsq = 0.0;    // |T_a|^2
    double V = 0.0;      // V_a
    int m = 0;           // slice dimension contribution
    int tau = 0;         // orbit dimension contribution
    int rho = 0;         // isotropy dimension contribution
  };
  std::vector<Cluster> clusters;  // eigenvalues strictly descending
  int n = 0;
  int m = 0;  // cohomogeneity = sum of cluster m's
};

SpectralData spectral_data(const StructurePoint& p, const Tolerances& tol = {});

/// Characteristic polynomial p_C(t) = det(tI - H)(t^2 + h_1 t + V) + T*Cof(tI - H)T,
/// computed through the spectral product form.
RealPolynomial char_poly_pC(const StructurePoint& p, const Tolerances& tol = {});

struct ReducedPolys {
  RealPolynomial p_D;    // reduced characteristic polynomial, degree m+2
  RealPolynomial p_hpp;  // constant-root factor, degree n-m
  int m = 0;
};

/// Factorization p_C = p_hpp * p_D with p_hpp = prod (t - H_a)^(n_a - m_a).
/// Throws an internal-inconsistency error if the polynomial division of p_C
/// by p_hpp leaves a residual above tolerance.
ReducedPolys reduced_polys(const StructurePoint& p, const Tolerances& tol = {});

/// Affine functional l(u) = coeffs[0] + sum_k coeffs[k] u_k attached to a
/// simple real root of p_D.
struct FaceFunctional {
  double root = 0.0;
  Vec coeffs;  // size m+1, constant term first
  double operator()(const Vec& u) const {
    double acc = coeffs(0);
    for (int k = 0; k < u.size(); ++k) acc += coeffs(k + 1) * u(k);
    return acc;
  }
};

struct MomentumCell {
  RealPolynomial p_D;
  int m = 0;
  int case_number = 0;   // 1..4
  int case_index = 0;    // i of Case 2-i / 3-i / 4-i (paper labels); 0 for Case 1
  char case_variant = 0; // 'a' or 'b' in Case 3
  std::vector<double> roots;  // distinct real roots, descending (paper's r list)
  std::vector<int> mult;      // multiplicities of those roots
  std::vector<int> mu;        // mu_i per real root

  struct Band {
    double lo = 0.0, hi = 0.0;  // hi may be +infinity
    bool lo_closed = true, hi_closed = true;
  };
  std::vector<Band> bands;  // I_1..I_m, band 1 highest

  std::vector<FaceFunctional> faces;  // one per simple real root, root-descending

  bool bounded = false;
  std::string tag() const;  // "Case1", "Case2-1", "Case3-1b", "Case4-0", ...
};

/// All possible momentum cells of p_D per the four-case taxonomy. Rejects
/// root patterns outside the taxonomy with a not-a-valid-p_D error.
std::vector<MomentumCell> classify_cells(const RealPolynomial& p_D, const Tolerances& tol = {});

enum class Membership { interior, boundary, outside };
Membership cell_membership(const MomentumCell& cell, const Vec& k, double tol = 1e-10);

/// Construct a structure point realizing reduced momentum value k in the cell
/// (Prop 7 recipe: partial fractions of p_D / p_k).
StructurePoint construct_from_cell(const RealPolynomial& p_C, const RealPolynomial& p_D,
                                   const MomentumCell& cell, const Vec& k,
                                   const Tolerances& tol = {});

enum class Completeness { possibly_complete, orbifold_only, never_complete };

struct CaseVerdict {
  bool bounded = false;
  Completeness completeness = Completeness::never_complete;
  std::string notes;
};

CaseVerdict verdict(const MomentumCell& cell);

/// Root data (p_C, p_D) of the SubCase 4-0 orbifold family:
/// r_beta = r * sum_a (nu_a + 1)(p_a - p_beta) with p_0 = 0 prepended.
/// p must be strictly increasing positive integers with gcd 1; nu nonnegative.
std::pair<RealPolynomial, RealPolynomial> orbifold_case40(double r, const std::vector<int>& p,
                                                          const std::vector<int>& nu);

/// Constant holomorphic sectional curvature 4 p_D'(r) / p_h'(r) of the
/// reduced-space factor attached to a constant root r of the momentum
/// polynomial at p. Throws when p_h'(r) is within tolerance of zero.
double reduced_space_curvature(double r, const StructurePoint& p, const Tolerances& tol = {});

}  // namespace bk
