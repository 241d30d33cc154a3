#include "bk/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bk/cell_metric.hpp"

namespace bk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SpectralData spectral_data(const StructurePoint& p, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(p.H);
  Vec vals = es.eigenvalues().reverse();
  CMat vecs(p.n, p.n);
  for (int i = 0; i < p.n; ++i) vecs.col(i) = es.eigenvectors().col(p.n - 1 - i);

  SpectralData out;
  out.n = p.n;
  double hscale = 1.0 + vals.cwiseAbs().maxCoeff();
  int i = 0;
  while (i < p.n) {
    SpectralData::Cluster cl;
    double v0 = vals(i);
    double sum = 0.0;
    int count = 0;
    while (i < p.n && std::abs(vals(i) - v0) <= tol.cluster * hscale) {
      Complex c = vecs.col(i).dot(p.T);
      cl.Tsq += std::norm(c);
      sum += vals(i);
      ++count;
      ++i;
    }
    cl.H = sum / count;
    cl.n = count;
    out.clusters.push_back(cl);
  }

  double trH = p.H.trace().real();
  double vscale = 1.0 + std::abs(p.V) + hscale * hscale;
  double tscale = 1.0 + p.T.squaredNorm();
  for (size_t a = 0; a < out.clusters.size(); ++a) {
    auto& cl = out.clusters[a];
    cl.V = cl.H * cl.H + trH * cl.H + p.V;
    for (size_t b = 0; b < out.clusters.size(); ++b)
      if (b != a) cl.V += out.clusters[b].Tsq / (cl.H - out.clusters[b].H);

    if (cl.Tsq > tol.zero * tscale) {
      cl.rho = (cl.n - 1) * (cl.n - 1);
      cl.tau = 1;
      cl.m = (cl.n > 1) ? 2 : 1;
    } else if (std::abs(cl.V) > tol.zero * vscale) {
      cl.rho = cl.n * cl.n;
      cl.tau = 0;
      cl.m = 1;
    } else {
      cl.rho = cl.n * cl.n;
      cl.tau = 2 * cl.n;
      cl.m = 0;
    }
    out.m += cl.m;
  }
  return out;
}

RealPolynomial char_poly_pC(const StructurePoint& p, const Tolerances& tol) {
  SpectralData sd = spectral_data(p, tol);
  // det(tI - H) * (t^2 + h1 t + V) + sum_a |T_a|^2 prod_{b!=a}(t-H_b)^{n_b} (t-H_a)^{n_a-1}
  std::vector<double> all_roots;
  for (const auto& cl : sd.clusters)
    for (int j = 0; j < cl.n; ++j) all_roots.push_back(cl.H);
  RealPolynomial det_poly = RealPolynomial::from_real_roots(all_roots);

  double h1 = p.H.trace().real();
  Vec quad(3);
  quad << p.V, h1, 1.0;
  RealPolynomial quadratic(quad);

  Vec acc = (det_poly * quadratic).coeffs();
  for (size_t a = 0; a < sd.clusters.size(); ++a) {
    if (sd.clusters[a].Tsq == 0.0) continue;
    std::vector<double> rs;
    for (size_t b = 0; b < sd.clusters.size(); ++b) {
      int copies = sd.clusters[b].n - (a == b ? 1 : 0);
      for (int j = 0; j < copies; ++j) rs.push_back(sd.clusters[b].H);
    }
    Vec term = RealPolynomial::from_real_roots(rs).coeffs();
    acc.head(term.size()) += sd.clusters[a].Tsq * term;
  }
  acc(acc.size() - 1) = 1.0;
  return RealPolynomial(acc);
}

ReducedPolys reduced_polys(const StructurePoint& p, const Tolerances& tol) {
  SpectralData sd = spectral_data(p, tol);
  std::vector<double> constant_roots;
  for (const auto& cl : sd.clusters)
    for (int j = 0; j < cl.n - cl.m; ++j) constant_roots.push_back(cl.H);

  ReducedPolys out;
  out.m = sd.m;
  out.p_hpp = RealPolynomial::from_real_roots(constant_roots);
  RealPolynomial pC = char_poly_pC(p, tol);
  auto [quot, rem] = pC.divide(out.p_hpp);
  double scale = 1.0 + pC.coeffs().cwiseAbs().maxCoeff();
  if (rem.cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw error("inconsistency",
                "reduced_polys: p_hpp does not divide p_C (residual " +
                    std::to_string(rem.cwiseAbs().maxCoeff()) +
                    "); eigenvalue clustering may be misconfigured");
  out.p_D = quot;
  return out;
}

std::string MomentumCell::tag() const {
  switch (case_number) {
    case 1:
      return "Case1";
    case 2:
      return "Case2-" + std::to_string(case_index);
    case 3:
      return "Case3-" + std::to_string(case_index) + std::string(1, case_variant);
    case 4:
      return "Case4-" + std::to_string(case_index);
    default:
      return "Case?";
  }
}

namespace {

// Bands I_1..I_m from the mu-assignment: I_j = (L_j, U_j) with
// L_j = max{r_i : mu_i >= j}, U_j = min{r_i : mu_i <= j-1}; a finite endpoint
// is included iff it is a simple root of p_D.
void fill_bands(MomentumCell& cell) {
  cell.bands.clear();
  for (int j = 1; j <= cell.m; ++j) {
    MomentumCell::Band band;
    band.lo = -kInf;
    band.hi = kInf;
    band.lo_closed = band.hi_closed = false;
    for (size_t i = 0; i < cell.roots.size(); ++i) {
      if (cell.mu[i] >= j && (band.lo == -kInf || cell.roots[i] > band.lo)) {
        band.lo = cell.roots[i];
        band.lo_closed = cell.mult[i] == 1;
      }
      if (cell.mu[i] <= j - 1 && (band.hi == kInf || cell.roots[i] < band.hi)) {
        band.hi = cell.roots[i];
        band.hi_closed = cell.mult[i] == 1;
      }
    }
    cell.bands.push_back(band);
  }
}

MomentumCell make_cell(const RealPolynomial& p_D, int m, int case_no, int case_idx,
                       char variant, const std::vector<double>& roots,
                       const std::vector<int>& mult, const std::vector<int>& mu) {
  MomentumCell cell;
  cell.p_D = p_D;
  cell.m = m;
  cell.case_number = case_no;
  cell.case_index = case_idx;
  cell.case_variant = variant;
  cell.roots = roots;
  cell.mult = mult;
  cell.mu = mu;
  fill_bands(cell);
  cell.bounded = true;
  for (const auto& b : cell.bands)
    if (b.lo == -kInf || b.hi == kInf) cell.bounded = false;
  std::vector<double> simple;
  for (size_t i = 0; i < roots.size(); ++i)
    if (mult[i] == 1) simple.push_back(roots[i]);
  cell.faces = face_functionals(p_D, simple, m);
  return cell;
}

}  // namespace

std::vector<MomentumCell> classify_cells(const RealPolynomial& p_D, const Tolerances& tol) {
  int m = p_D.degree() - 2;
  if (m < 0) throw parameter_error("classify_cells: p_D must have degree >= 2");

  std::vector<Root> all = p_D.roots(tol.root_imag, tol.cluster);
  std::vector<double> roots;
  std::vector<int> mult;
  int real_with_mult = 0, n_complex = 0;
  int triple_at = -1, double_at = -1;
  for (const Root& r : all) {
    if (!r.is_real()) {
      n_complex += r.multiplicity;
      if (r.multiplicity > 1)
        throw error("invalid-pD", "classify_cells: multiple complex root outside taxonomy");
      continue;
    }
    roots.push_back(r.value.real());
    mult.push_back(r.multiplicity);
    real_with_mult += r.multiplicity;
    if (r.multiplicity == 3) triple_at = static_cast<int>(roots.size()) - 1;
    if (r.multiplicity == 2) double_at = static_cast<int>(roots.size()) - 1;
    if (r.multiplicity > 3)
      throw error("invalid-pD", "classify_cells: real root of order >= 4 outside taxonomy");
  }
  int n_real = static_cast<int>(roots.size());

  std::vector<MomentumCell> cells;
  if (n_complex == 2 && n_real == m && real_with_mult == m) {
    // Case 1: m simple real roots and one complex pair
    std::vector<int> mu(n_real);
    for (int i = 0; i < n_real; ++i) mu[i] = i + 1;
    cells.push_back(make_cell(p_D, m, 1, 0, 0, roots, mult, mu));
  } else if (n_complex == 0 && n_real == m && triple_at >= 0 && double_at < 0) {
    // Case 2: one triple root among m distinct reals
    std::vector<int> mu(n_real);
    for (int i = 0; i < n_real; ++i) mu[i] = i + 1;
    cells.push_back(make_cell(p_D, m, 2, triple_at + 1, 0, roots, mult, mu));
  } else if (n_complex == 0 && n_real == m + 1 && double_at >= 0 && triple_at < 0) {
    // Case 3: one double root among m+1 distinct reals; roots labeled r_1..r_{m+1}
    int i = double_at + 1;  // paper label of the double root
    auto mu_for = [&](int mu_i) {
      std::vector<int> mu(n_real);
      for (int j = 1; j <= n_real; ++j) mu[j - 1] = (j < i) ? j : (j > i ? j - 1 : mu_i);
      return mu;
    };
    if (i != m + 1) cells.push_back(make_cell(p_D, m, 3, i, 'a', roots, mult, mu_for(i)));
    cells.push_back(make_cell(p_D, m, 3, i, 'b', roots, mult, mu_for(i - 1)));
  } else if (n_complex == 0 && n_real == m + 2 && triple_at < 0 && double_at < 0) {
    // Case 4: m+2 simple real roots labeled r_0..r_{m+1}; one cell per i <= m
    for (int i = 0; i <= m; ++i) {
      std::vector<int> mu(n_real);
      for (int j = 0; j < n_real; ++j) mu[j] = (j < i) ? j + 1 : (j > i ? j - 1 : i);
      cells.push_back(make_cell(p_D, m, 4, i, 0, roots, mult, mu));
    }
  } else {
    throw error("invalid-pD", "classify_cells: root pattern outside the four-case taxonomy");
  }
  return cells;
}

Membership cell_membership(const MomentumCell& cell, const Vec& k, double tol) {
  if (k.size() != cell.m) throw parameter_error("cell_membership: wrong k dimension");
  RealPolynomial pk = poly_from_symmetric(k);
  double scale = 1.0 + (k.size() > 0 ? k.cwiseAbs().maxCoeff() : 0.0);
  bool on_boundary = false;
  for (size_t i = 0; i < cell.roots.size(); ++i) {
    double val = pk(cell.roots[i]);
    if (cell.mu[i] % 2) val = -val;
    double eps = tol * scale * std::pow(1.0 + std::abs(cell.roots[i]), cell.m);
    if (val < -eps) return Membership::outside;
    if (val <= eps) {
      if (cell.mult[i] > 1) return Membership::outside;  // strict at multiple roots
      on_boundary = true;
    }
  }
  return on_boundary ? Membership::boundary : Membership::interior;
}

StructurePoint construct_from_cell(const RealPolynomial& p_C, const RealPolynomial& p_D,
                                   const MomentumCell& cell, const Vec& k,
                                   const Tolerances& tol) {
  int m = cell.m;
  int n = p_C.degree() - 2;
  if (k.size() != m) throw parameter_error("construct_from_cell: wrong k dimension");
  if (cell_membership(cell, k) == Membership::outside)
    throw error("invalid-cell-point", "construct_from_cell: k lies outside the cell");

  // p_hpp = p_C / p_D, all roots must be real roots of p_D
  auto [p_hpp, rem] = p_C.divide(p_D);
  double cscale = 1.0 + p_C.coeffs().cwiseAbs().maxCoeff();
  if (rem.cwiseAbs().maxCoeff() > 1e-8 * cscale)
    throw error("invalid-pair", "construct_from_cell: p_D does not divide p_C");
  if (std::abs(p_C.coeff(n + 1)) > 1e-9 * cscale)
    throw error("invalid-pair", "construct_from_cell: p_C has a t^{n+1} term");

  std::vector<double> s_tail;  // roots of p_hpp, snapped onto roots of p_D
  if (p_hpp.degree() > 0) {
    for (const Root& r : p_hpp.roots(tol.root_imag, tol.cluster)) {
      double best = kInf;
      double snapped = r.value.real();
      for (double rd : cell.roots) {
        if (std::abs(rd - r.value.real()) < best) {
          best = std::abs(rd - r.value.real());
          snapped = rd;
        }
      }
      if (!r.is_real() || best > 1e-6 * (1.0 + std::abs(snapped)))
        throw error("invalid-pair",
                    "construct_from_cell: a root of p_C/p_D is not a real root of p_D");
      for (int j = 0; j < r.multiplicity; ++j) s_tail.push_back(snapped);
    }
  }

  // leading block: s_1 >= ... >= s_m = lambda(k)
  Vec s_head = m > 0 ? sorted_roots_inverse(k, tol.root_imag) : Vec(0);
  RealPolynomial p_k = poly_from_symmetric(k);

  // p_D / p_k = t^2 + b1 t + b2 + sum q_j/(t - s_j); q unique with the
  // convention q_{j+1} = 0 whenever s_{j+1} == s_j
  auto [quot2, rem2] = p_D.divide(p_k);
  if (quot2.degree() != 2) throw error("invalid-pair", "construct_from_cell: degree mismatch");
  double b1 = quot2.coeff(1), b2 = quot2.coeff(0);

  double sep = 1e-9 * (1.0 + (m > 0 ? s_head.cwiseAbs().maxCoeff() : 0.0));
  Vec q = Vec::Zero(m);
  for (int j = 0; j < m; ++j) {
    if (j > 0 && std::abs(s_head(j) - s_head(j - 1)) <= sep) continue;  // q_{j+1} = 0
    bool doubled = (j + 1 < m) && std::abs(s_head(j + 1) - s_head(j)) <= sep;
    if (doubled) {
      // s_j is then a simple root of p_D: residue of the (simple) pole
      double denom = 1.0;
      for (int l = 0; l < m; ++l)
        if (l != j && l != j + 1) denom *= s_head(j) - s_head(l);
      q(j) = p_D.derivative_at(s_head(j)) / denom;
    } else {
      q(j) = p_D(s_head(j)) / p_k.derivative_at(s_head(j));
    }
    if (q(j) < 0.0) {
      if (q(j) < -1e-10 * (1.0 + p_D.coeffs().cwiseAbs().maxCoeff()))
        throw error("invalid-cell-point",
                    "construct_from_cell: negative partial-fraction weight q_" +
                        std::to_string(j + 1));
      q(j) = 0.0;  // boundary round-off
    }
  }

  CMat H = CMat::Zero(n, n);
  CVec T = CVec::Zero(n);
  for (int j = 0; j < m; ++j) {
    H(j, j) = s_head(j);
    T(j) = std::sqrt(q(j));
  }
  for (int j = m; j < n; ++j) H(j, j) = s_tail[j - m];
  StructurePoint out(H, T, b2, tol);

  double tr = out.H.trace().real();
  if (std::abs(tr - b1) > 1e-7 * (1.0 + std::abs(b1)))
    throw error("invalid-pair", "construct_from_cell: tr s does not match the b1 coefficient");
  return out;
}

CaseVerdict verdict(const MomentumCell& cell) {
  CaseVerdict out;
  out.bounded = cell.bounded;
  if (cell.m == 0) {
    out.completeness = Completeness::possibly_complete;
    out.notes = "m = 0: locally symmetric model; momentum image is a point";
    return out;
  }
  bool b31 = cell.case_number == 3 && cell.case_index == 1 && cell.case_variant == 'b';
  bool c40 = cell.case_number == 4 && cell.case_index == 0;
  if (b31) {
    out.completeness = Completeness::possibly_complete;
    out.notes = "bounded cell of SubCase 3-1b";
  } else if (c40) {
    out.completeness = Completeness::orbifold_only;
    out.notes = "compact cell of SubCase 4-0: complete orbifolds only";
  } else {
    out.completeness = Completeness::never_complete;
    out.notes = "unbounded cell";
  }
  return out;
}

std::pair<RealPolynomial, RealPolynomial> orbifold_case40(double r, const std::vector<int>& p,
                                                          const std::vector<int>& nu) {
  if (!(r > 0)) throw parameter_error("orbifold_case40: r must be positive");
  std::vector<int> pp;
  pp.push_back(0);
  pp.insert(pp.end(), p.begin(), p.end());
  int mp2 = static_cast<int>(pp.size());  // m + 2
  if (mp2 < 2 || static_cast<int>(nu.size()) != mp2)
    throw parameter_error("orbifold_case40: need nu of length m+2 and p of length m+1");
  int g = 0;
  for (size_t i = 1; i < pp.size(); ++i) {
    if (pp[i] <= pp[i - 1]) throw parameter_error("orbifold_case40: p must be strictly increasing");
    g = std::gcd(g, pp[i]);
  }
  if (g != 1) throw parameter_error("orbifold_case40: p must have gcd 1");
  for (int v : nu)
    if (v < 0) throw parameter_error("orbifold_case40: nu must be nonnegative");

  std::vector<double> rbeta(mp2);
  for (int b = 0; b < mp2; ++b) {
    double acc = 0.0;
    for (int a = 0; a < mp2; ++a) acc += (nu[a] + 1) * (pp[a] - pp[b]);
    rbeta[b] = r * acc;
  }
  std::vector<double> pc_roots, pd_roots;
  for (int b = 0; b < mp2; ++b) {
    pd_roots.push_back(rbeta[b]);
    for (int j = 0; j <= nu[b]; ++j) pc_roots.push_back(rbeta[b]);
  }
  return {RealPolynomial::from_real_roots(pc_roots), RealPolynomial::from_real_roots(pd_roots)};
}

double reduced_space_curvature(double r, const StructurePoint& p, const Tolerances& tol) {
  ReducedPolys rp = reduced_polys(p, tol);
  double scale = 1.0 + std::abs(r);
  if (std::abs(rp.p_hpp(r)) > 1e-6 * std::pow(scale, rp.p_hpp.degree()))
    throw parameter_error("reduced_space_curvature: r is not a constant root of p_h at p");
  RealPolynomial p_h = momentum_poly(p);
  auto [p_hp, rem] = p_h.divide(rp.p_hpp);
  (void)rem;
  double denom = p_hp(r);
  if (std::abs(denom) < 1e-10 * std::pow(scale, p_hp.degree()))
    throw error("singular-configuration",
                "reduced_space_curvature: p_h'(r) vanishes at this point");
  return 4.0 * rp.p_D.derivative_at(r) / denom;
}

}  // namespace bk
