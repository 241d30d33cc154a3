#include <algorithm>
#include <cmath>
#include <limits>

#include "bk/explicit_metrics.hpp"
#include "bk/quadrature.hpp"

namespace bk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Dim1Family dim1_suite(double C2, double C3) {
  Dim1Family fam;
  fam.C2 = C2;
  fam.C3 = C3;
  Vec c(4);
  c << C3, C2, 0.0, 1.0;
  fam.p = RealPolynomial(c);

  for (const Root& r : fam.p.real_roots()) {
    fam.roots.push_back(r.value.real());
    fam.mult.push_back(r.multiplicity);
  }

  // case taxonomy of t^3 + C2 t + C3
  if (fam.roots.size() == 1 && fam.mult[0] == 1) {
    fam.case_tag = "Case1";
    fam.components.push_back({"GammaC", fam.roots[0], kInf, false});
  } else if (fam.roots.size() == 1 && fam.mult[0] == 3) {
    fam.case_tag = "Case2";  // p = t^3
    fam.components.push_back({"point", 0.0, 0.0, true});
    fam.components.push_back({"GammaC_o", 0.0, kInf, false});
  } else if (fam.roots.size() == 2) {
    // double root r, simple root -2r
    double r = fam.mult[0] == 2 ? fam.roots[0] : fam.roots[1];
    if (r > 0.0) {
      fam.case_tag = "Case3-1";
      fam.components.push_back({"GammaC_b", -2.0 * r, r, true});
      fam.components.push_back({"point", r, r, true});
      fam.components.push_back({"GammaC_a", r, kInf, false});
    } else {
      fam.case_tag = "Case3-2";
      fam.components.push_back({"point", r, r, true});
      fam.components.push_back({"GammaC_a", -2.0 * r, kInf, false});
    }
  } else if (fam.roots.size() == 3) {
    fam.case_tag = "Case4";
    fam.components.push_back({"GammaC_0", fam.roots[0], kInf, false});
    fam.components.push_back({"GammaC_1", fam.roots[2], fam.roots[1], true});
  } else {
    throw error("invalid-dim1", "dim1_suite: unexpected root pattern");
  }

  // tau = +-pi/p'(r) > 0 at simple roots adjacent to a component
  for (size_t i = 0; i < fam.roots.size(); ++i) {
    if (fam.mult[i] != 1) continue;
    double dp = fam.p.derivative_at(fam.roots[i]);
    if (dp == 0.0) continue;
    fam.periods.emplace_back(fam.roots[i], M_PI / std::abs(dp));
  }
  return fam;
}

namespace {

// u(H) = integral_{H0}^{H} dh / (2 p(h)); strictly increasing on a component
double chart_u_of_H(const RealPolynomial& p, double H0, double H) {
  auto f = [&](double h) { return 1.0 / (2.0 * p(h)); };
  return adaptive_gauss(f, H0, H, 1e-13);
}

}  // namespace

double dim1_H_of_chart(double C2, double C3, double H0, double re_zeta) {
  Vec c(4);
  c << C3, C2, 0.0, 1.0;
  RealPolynomial p(c);
  if (!(p(H0) > 0.0)) throw domain_error("dim1: base point must satisfy p(H0) > 0");

  // component bounds around H0
  double lo = -kInf, hi = kInf;
  for (const Root& r : p.real_roots()) {
    double v = r.value.real();
    if (v <= H0) lo = std::max(lo, v);
    if (v > H0) hi = std::min(hi, v);
  }

  // Newton on u(H) = re_zeta with bracket maintenance
  double blo = lo == -kInf ? H0 - 1.0 : lo + 1e-12 * (1.0 + std::abs(lo));
  if (lo == -kInf)
    while (chart_u_of_H(p, H0, blo) > re_zeta) blo = H0 - 2.0 * (H0 - blo);
  double bhi = hi == kInf ? H0 + 1.0 : hi - 1e-12 * (1.0 + std::abs(hi));
  if (hi == kInf)
    while (chart_u_of_H(p, H0, bhi) < re_zeta) bhi = H0 + 2.0 * (bhi - H0);

  double H = H0;
  for (int it = 0; it < 200; ++it) {
    double g = chart_u_of_H(p, H0, H) - re_zeta;
    if (std::abs(g) < 1e-13 * (1.0 + std::abs(re_zeta))) break;
    if (g < 0.0)
      blo = std::max(blo, H);
    else
      bhi = std::min(bhi, H);
    double step = g * 2.0 * p(H);
    double Hn = H - step;
    if (!(Hn > blo && Hn < bhi)) Hn = 0.5 * (blo + bhi);
    H = Hn;
  }
  return H;
}

MetricField dim1_metric_chart(double C2, double C3, double H0) {
  MetricField field;
  field.q = 1;
  field.name = "dim1";
  field.eval = [C2, C3, H0](const CVec& z) {
    double H = dim1_H_of_chart(C2, C3, H0, z(0).real());
    double p = H * H * H + C2 * H + C3;
    CMat G(1, 1);
    G(0, 0) = p;
    return G;
  };
  return field;
}

double dim1_gauss_curvature(double C2, double C3, double H) {
  // g = E dH^2 + G dtheta^2 with E = 1/(4p), G = 4p; evaluate the orthogonal-
  // coordinate curvature formula with central differences on the coefficients
  auto pval = [&](double h) { return h * h * h + C2 * h + C3; };
  if (!(pval(H) > 0.0)) throw domain_error("dim1_gauss_curvature: p(H) <= 0");
  double step = 1e-4 * (1.0 + std::abs(H));
  auto inner = [&](double h) {
    double E = 1.0 / (4.0 * pval(h));
    double G = 4.0 * pval(h);
    double Gp = (4.0 * pval(h + step) - 4.0 * pval(h - step)) / (2.0 * step);
    return Gp / std::sqrt(E * G);  // sqrt(EG) = 1 here, kept for form
  };
  double dH = (inner(H + step) - inner(H - step)) / (2.0 * step);
  return -dH / 2.0;
}

double dim1_period_fit(double C2, double C3, double r) {
  Vec c(4);
  c << C3, C2, 0.0, 1.0;
  RealPolynomial p(c);
  double dp = p.derivative_at(r);
  if (dp == 0.0) throw parameter_error("dim1_period_fit: r is not a simple root");
  double side = dp > 0.0 ? 1.0 : -1.0;  // the p > 0 side of the root

  // cone angle per unit theta-period: alpha = lim 2 sqrt(p(H)) / d(H) with
  // d(H) = integral_r^H dh/(2 sqrt(p)); substitute h = r + side * v^2
  auto fit_at = [&](double eps) {
    double H = r + side * eps;
    auto dv = [&](double v) {
      double pv = p(r + side * v * v);
      return pv > 0.0 ? v / std::sqrt(pv) : 0.0;
    };
    double d = adaptive_gauss(dv, 0.0, std::sqrt(eps), 1e-12);
    return 2.0 * std::sqrt(p(H)) / d;
  };
  // Richardson in eps (the fit has an O(eps) defect)
  double a1 = fit_at(1e-3 * (1.0 + std::abs(r)));
  double a2 = fit_at(5e-4 * (1.0 + std::abs(r)));
  double alpha = 2.0 * a2 - a1;
  return 2.0 * M_PI / alpha;
}

}  // namespace bk
