#include <algorithm>
#include <cmath>
#include <limits>

#include "bk/explicit_metrics.hpp"
#include "bk/quadrature.hpp"

namespace bk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double D_of(const RotSymParams& p, double x) { return 1.0 + p.k * x + p.a * x * x; }

// x-interval (x_lo, x_hi) containing 0 on which D > 0
std::pair<double, double> positivity_interval(const RotSymParams& p) {
  double lo = -kInf, hi = kInf;
  if (p.a == 0.0) {
    if (p.k > 0.0) lo = -1.0 / p.k;
    if (p.k < 0.0) hi = -1.0 / p.k;
  } else {
    double disc = p.k * p.k - 4.0 * p.a;
    if (disc >= 0.0) {
      double r1 = (-p.k - std::sqrt(disc)) / (2.0 * p.a);
      double r2 = (-p.k + std::sqrt(disc)) / (2.0 * p.a);
      if (r1 > r2) std::swap(r1, r2);
      if (r2 <= 0.0)
        lo = r2;
      else if (r1 >= 0.0)
        hi = r1;
      else
        throw parameter_error("rotsym: D(0) <= 0");
    } else if (p.a < 0.0) {
      throw parameter_error("rotsym: no admissible interval (a < 0, D < 0 at 0?)");
    }
  }
  return {lo, hi};
}

// integral of (k + a xi)/D(xi) from 0 to x; the integrand may blow up at the
// ends of the positivity interval, never inside
double F_exponent(const RotSymParams& p, double x) {
  auto f = [&](double xi) { return (p.k + p.a * xi) / D_of(p, xi); };
  return panels_toward(f, 0.0, x, std::max(1e-14, 1e-14 * std::abs(x)));
}

// t(x) = x exp(-F_exponent(x)) for type one; strictly increasing
double t_of_x_type_one(const RotSymParams& p, double x) {
  return x * std::exp(-F_exponent(p, x));
}

// larger root of D for type two
double pole_p(const RotSymParams& p) {
  double disc = p.k * p.k - 4.0 * p.a;
  if (!(p.a > 0.0) || p.k > -2.0 * std::sqrt(p.a))
    throw parameter_error("rotsym: type two requires a > 0 and k <= -2 sqrt(a)");
  return (-p.k + std::sqrt(std::max(0.0, disc))) / (2.0 * p.a);
}

// type two: t(x) = exp(-integral_x^inf dxi/(xi D)) via u = 1/xi
double t_of_x_type_two(const RotSymParams& p, double x) {
  double u_hi = 1.0 / x;
  auto f = [&](double u) { return u / (u * u + p.k * u + p.a); };
  double I = panels_toward(f, 0.0, u_hi, 1e-15);
  return std::exp(-I);
}

double solve_monotone(const std::function<double(double)>& g, double target, double lo,
                      double hi) {
  // g increasing; bisection to high relative accuracy
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (g(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RotSymDomain rotsym_domain(const RotSymParams& p) {
  RotSymDomain d;
  if (p.branch == RotSymBranch::type_one) {
    auto interval = positivity_interval(p);
    double xhi = interval.second;
    d.x_lo = 0.0;  // t >= 0 corresponds to x >= 0
    d.x_hi = xhi;
    d.t_lo = 0.0;
    if (xhi < kInf) {
      // at a finite positivity endpoint the exponent integral diverges to
      // -infinity, so t = x exp(-I) is unbounded
      d.t_hi = kInf;
    } else if (p.a == 0.0) {
      d.t_hi = p.k > 0.0 ? 1.0 / p.k : kInf;  // closed form x = t/(1-kt)
    } else {
      // a > 0 with D root-free: t converges to a finite radius-squared
      d.t_hi = t_of_x_type_one(p, 1e8);
    }
  } else {
    d.x_lo = pole_p(p);
    d.x_hi = kInf;
    d.t_lo = 0.0;
    d.t_hi = 1.0;
  }
  return d;
}

RotSymProfile rotsym_profile(const RotSymParams& p, double t) {
  RotSymDomain dom = rotsym_domain(p);
  RotSymProfile out;
  if (p.branch == RotSymBranch::type_one) {
    if (t < 0.0 || (t >= dom.t_hi))
      throw domain_error("rotsym_profile: t outside [0, " + std::to_string(dom.t_hi) + ")");
    if (t == 0.0) {
      out.x = 0.0;
      out.f_prime = 1.0;
      return out;
    }
    if (p.a == 0.0) {
      out.x = t / (1.0 - p.k * t);
      out.f_prime = 1.0 / (1.0 - p.k * t);
      return out;
    }
    double xhi;
    if (dom.x_hi == kInf) {
      xhi = 1.0;
      while (t_of_x_type_one(p, xhi) < t) xhi *= 2.0;
    } else {
      double gap = 1e-3 * (1.0 + std::abs(dom.x_hi));
      while (t_of_x_type_one(p, dom.x_hi - gap) < t) gap /= 2.0;
      xhi = dom.x_hi - gap;
    }
    out.x = solve_monotone([&](double x) { return t_of_x_type_one(p, x); }, t, 0.0, xhi);
    out.f_prime = out.x / t;
  } else {
    if (!(t > 0.0 && t < 1.0))
      throw domain_error("rotsym_profile: type two needs 0 < t < 1");
    double pp = pole_p(p);
    double xhi = std::max(2.0 * pp, 1.0);
    while (t_of_x_type_two(p, xhi) < t) xhi *= 2.0;
    double xlo = pp * (1.0 + 1e-13);
    out.x = solve_monotone([&](double x) { return t_of_x_type_two(p, x); }, t, xlo, xhi);
    out.f_prime = out.x / t;
  }
  return out;
}

MetricField rotsym_metric(const RotSymParams& params) {
  RotSymDomain dom = rotsym_domain(params);
  MetricField field;
  field.q = params.n;
  field.name = "rotsym(n=" + std::to_string(params.n) + ",k=" + std::to_string(params.k) +
               ",a=" + std::to_string(params.a) +
               (params.branch == RotSymBranch::type_two ? ",type2)" : ")");
  RotSymParams p = params;
  field.eval = [p](const CVec& z) {
    double t = z.squaredNorm();
    RotSymProfile prof = rotsym_profile(p, t);
    double fp = prof.f_prime;
    double fpp = (p.a * t * fp + p.k) * fp * fp;
    CMat G = fp * CMat::Identity(z.size(), z.size());
    G += fpp * (z.conjugate() * z.transpose());
    return G;
  };
  double r_hi = dom.t_hi == kInf ? kInf : std::sqrt(dom.t_hi);
  bool punctured = params.branch == RotSymBranch::type_two;
  field.margin = [r_hi, punctured](const CVec& z) {
    double r = z.norm();
    double m = r_hi == kInf ? kInf : r_hi - r;
    if (punctured) m = std::min(m, r);
    return m;
  };
  return field;
}

std::pair<double, double> rotsym_ricci_eigs(const RotSymParams& params, const CVec& z) {
  double t = z.squaredNorm();
  RotSymProfile prof = rotsym_profile(params, t);
  double tfp = t * prof.f_prime;
  double rho1 = -2.0 * (params.n + 1) * params.k - 2.0 * (params.n + 2) * params.a * tfp;
  double rho2 = -2.0 * (params.n + 1) * params.k - 4.0 * (params.n + 2) * params.a * tfp;
  return {rho1, rho2};
}

double rotsym_arclength(const RotSymParams& params, double t0, double t1) {
  if (t0 == t1) return 0.0;
  if (t1 < t0) std::swap(t0, t1);
  double x0 = rotsym_profile(params, t0).x;
  double x1 = rotsym_profile(params, t1).x;
  auto ds = [&](double x) { return 1.0 / (2.0 * std::sqrt(x * D_of(params, x))); };
  if (x0 == 0.0) {
    // substitute x = w^2 to absorb the sqrt singularity at x = 0
    auto dw = [&](double w) { return 1.0 / std::sqrt(D_of(params, w * w)); };
    return adaptive_gauss(dw, 0.0, std::sqrt(x1));
  }
  return adaptive_gauss(ds, x0, x1);
}

double rotsym_arclength_capped(const RotSymParams& params, double t0, double length_cap) {
  RotSymDomain dom = rotsym_domain(params);
  double x0 = rotsym_profile(params, std::max(t0, 1e-12)).x;
  auto ds = [&](double x) { return 1.0 / (2.0 * std::sqrt(x * D_of(params, x))); };

  double acc = 0.0;
  if (dom.x_hi == kInf) {
    // dyadic panels outward; converges iff D grows quadratically
    double lo = x0, hi = std::max(2.0 * x0, 1.0);
    for (int i = 0; i < 4000 && acc < length_cap; ++i) {
      double piece = adaptive_gauss(ds, lo, hi);
      acc += piece;
      if (piece < 1e-12 * (1.0 + acc)) break;
      lo = hi;
      hi *= 2.0;
    }
    return acc;
  }
  double xh = dom.x_hi;
  double disc = params.k * params.k - 4.0 * params.a;
  bool double_root = params.a > 0.0 && std::abs(disc) < 1e-10;
  // numerical part: up to gap 1e-8 from the endpoint
  double gap = 1e-8 * (1.0 + std::abs(xh));
  double lo = x0, hi = 0.5 * (x0 + xh);
  while (xh - lo > gap && acc < length_cap) {
    acc += adaptive_gauss(ds, lo, std::min(hi, xh - gap));
    lo = std::min(hi, xh - gap);
    hi = 0.5 * (lo + xh);
  }
  if (acc >= length_cap) return acc;
  if (double_root) {
    // near a double root, D = a (x_hi - x)^2 and the element of arc is
    // dw / (2 sqrt(a x_hi)) in w = -log(x_hi - x): linear growth, no underflow
    double rate = 1.0 / (2.0 * std::sqrt(params.a * xh));
    double need = (length_cap - acc) / rate;
    (void)need;
    return length_cap + 1.0;  // diverges: reports cap overshoot
  }
  // simple root: finite remainder via v = sqrt(x_hi - x)
  double dD = std::abs(params.k + 2.0 * params.a * xh);
  if (dD > 0.0) {
    auto dv = [&](double v) {
      double x = xh - v * v;
      double Dv = std::max(D_of(params, x), dD * v * v * 1e-30);
      return v / std::sqrt(x * Dv);
    };
    acc += adaptive_gauss(dv, 0.0, std::sqrt(gap));
  }
  return acc;
}

}  // namespace bk
