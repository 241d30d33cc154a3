#include <cmath>

#include "bk/explicit_metrics.hpp"

namespace bk {

double grho_s(const CVec& z, const Vec& rho) {
  if (rho.size() != z.size()) throw parameter_error("grho_s: dimension mismatch");
  for (int i = 0; i < rho.size(); ++i)
    if (rho(i) < 0.0) throw parameter_error("grho_s: rho must be nonnegative");
  Vec zsq = z.cwiseAbs2();
  auto f = [&](double s) {
    double acc = s;
    for (int i = 0; i < rho.size(); ++i) acc -= std::exp(-rho(i) * s) * zsq(i);
    return acc;
  };
  // f is strictly increasing; f(0) <= 0 and f(|z|^2 + 1) > 0
  double lo = 0.0, hi = zsq.sum() + 1.0;
  if (f(0.0) == 0.0) return 0.0;
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double df = 1.0;
    for (int i = 0; i < rho.size(); ++i) df += rho(i) * std::exp(-rho(i) * s) * zsq(i);
    double step = f(s) / df;
    s -= step;
    if (std::abs(f(s)) < 1e-14 * (1.0 + s)) break;
  }
  return std::max(0.0, s);
}

MetricField grho_metric(const Vec& rho) {
  MetricField field;
  field.q = static_cast<int>(rho.size());
  field.name = "grho";
  Vec r = rho;
  field.eval = [r](const CVec& z) {
    int n = static_cast<int>(z.size());
    double s = grho_s(z, r);
    double S = 1.0;
    for (int i = 0; i < n; ++i) S += r(i) * std::exp(-r(i) * s) * std::norm(z(i));
    CMat Ginv(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex val = (r(i) + r(j) + r(i) * r(j) * s) * std::conj(z(i)) * z(j);
        if (i == j) val += std::exp(r(i) * s);
        Ginv(i, j) = S * val;
      }
    return CMat(Ginv.inverse());
  };
  return field;
}

double wps_s(const CVec& z, const Vec& rho) {
  int m = static_cast<int>(rho.size()) - 1;
  if (z.size() != m) throw parameter_error("wps_s: chart dimension is len(rho) - 1");
  for (int i = 0; i <= m; ++i)
    if (!(rho(i) > 0.0)) throw parameter_error("wps_s: rho must be positive");
  Vec zsq = z.cwiseAbs2();
  auto f = [&](double s) {
    double acc = s - 1.0;
    for (int a = 0; a < m; ++a) acc += zsq(a) * std::pow(s, rho(a + 1) / rho(0));
    return acc;
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double df = 1.0;
    for (int a = 0; a < m; ++a)
      df += zsq(a) * (rho(a + 1) / rho(0)) * std::pow(s, rho(a + 1) / rho(0) - 1.0);
    double step = f(s) / df;
    s = std::min(1.0, std::max(1e-300, s - step));
    if (std::abs(f(s)) < 1e-14) break;
  }
  return s;
}

MetricField wps_metric(const Vec& rho) {
  int m = static_cast<int>(rho.size()) - 1;
  if (m < 1) throw parameter_error("wps_metric: need at least two weights");
  MetricField field;
  field.q = m;
  field.name = "wps";
  Vec r = rho;
  field.eval = [r, m](const CVec& z) {
    double r1 = r(0);
    double s = wps_s(z, r);
    // w_a = |z_a|^2 s^{rho_a/rho_1} / denom, with the diagonal 1/w_a kept in
    // the form denom * s^{-rho_a/rho_1} so z_a = 0 stays regular
    Vec pw(m);
    double denom = r1;
    for (int a = 0; a < m; ++a) {
      pw(a) = std::pow(s, r(a + 1) / r1);
      denom += (r(a + 1) - r1) * std::norm(z(a)) * pw(a);
    }
    double w1 = 1.0, w0 = -1.0;  // rho_1 w_1 and -rho_1 w_0, then rescaled
    {
      double acc1 = 1.0, acc0 = 1.0;
      for (int a = 0; a < m; ++a) {
        double wa = std::norm(z(a)) * pw(a) / denom;
        acc1 -= r(a + 1) * wa;
        acc0 -= (r(a + 1) - r1) * wa;
      }
      w1 = acc1 / r1;
      w0 = -acc0 / r1;
    }
    if (!(w1 > 0.0) || !(-w0 > 0.0))
      throw numerical_error("wps_metric: w_1 or -w_0 lost positivity");
    CMat Ginv(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Complex val = std::conj(z(a)) * z(b) *
                      ((r(a + 1) - r1) * (r(b + 1) - r1) / (r1 * r1 * w0) +
                       r(a + 1) * r(b + 1) / (r1 * r1 * w1));
        if (a == b) val += denom / pw(a);
        Ginv(a, b) = val;
      }
    return CMat(Ginv.inverse());
  };
  return field;
}

}  // namespace bk
