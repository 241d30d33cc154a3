#include "bk/geodesic.hpp"

#include <cmath>

#include "bk/classification.hpp"

namespace bk {

namespace {

struct State {
  CMat H;
  CVec T;
  double V;
};

State rhs(const State& s, const CVec& w) {
  State d;
  d.H = s.T * w.adjoint() + w * s.T.adjoint();
  double trH = s.H.trace().real();
  CMat Q = s.H * s.H + trH * s.H + s.V * CMat::Identity(s.H.rows(), s.H.cols());
  d.T = Q * w;
  Complex tw = (s.T.adjoint() * w)(0, 0);
  Complex thw = (s.T.adjoint() * (s.H * w))(0, 0);
  d.V = trH * 2.0 * tw.real() + 2.0 * thw.real();
  return d;
}

State axpy(const State& a, double c, const State& b) {
  return {a.H + c * b.H, a.T + c * b.T, a.V + c * b.V};
}

}  // namespace

StructurePath integrate(const StructurePoint& p0, const CVec& w, double length, double h,
                        double blowup_ceiling) {
  if (std::abs(w.norm() - 1.0) > 1e-10)
    throw parameter_error("integrate: direction must be a unit vector");
  if (!(h > 0.0)) throw parameter_error("integrate: step must be positive");

  StructurePath path;
  path.direction = w;
  State s{p0.H, p0.T, p0.V};
  double t = 0.0;
  path.s.push_back(0.0);
  path.points.emplace_back(s.H, s.T, s.V);

  int steps = static_cast<int>(std::ceil(length / h));
  for (int i = 0; i < steps; ++i) {
    double hstep = std::min(h, length - t);
    if (hstep <= 0.0) break;
    State k1 = rhs(s, w);
    State k2 = rhs(axpy(s, hstep / 2.0, k1), w);
    State k3 = rhs(axpy(s, hstep / 2.0, k2), w);
    State k4 = rhs(axpy(s, hstep, k3), w);
    s.H += (hstep / 6.0) * (k1.H + 2.0 * k2.H + 2.0 * k3.H + k4.H);
    s.T += (hstep / 6.0) * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T);
    s.V += (hstep / 6.0) * (k1.V + 2.0 * k2.V + 2.0 * k3.V + k4.V);
    t += hstep;

    double defect = hermitian_defect(s.H);
    path.max_symmetrization_defect = std::max(path.max_symmetrization_defect, defect);
    s.H = ((s.H + s.H.adjoint()) / 2.0).eval();
    if (s.H.cwiseAbs().maxCoeff() > blowup_ceiling)
      throw numerical_error("integrate: ||H|| exceeded the blow-up ceiling");

    path.s.push_back(t);
    path.points.emplace_back(s.H, s.T, s.V);
  }
  return path;
}

double conserved_drift(const StructurePath& path) {
  if (path.points.empty()) throw parameter_error("conserved_drift: empty path");
  ConservedVector c0 = conserved_Ck(path.points.front());
  double worst = 0.0;
  for (const StructurePoint& p : path.points) {
    ConservedVector c = conserved_Ck(p);
    worst = std::max(worst, (c.C - c0.C).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

// locally symmetric points (T = 0 and H^2 + (tr H) H + V I = 0) have an
// identically vanishing right-hand side; every direction is admissible there
bool stationary_point(const StructurePoint& p, const Tolerances& tol) {
  double trH = p.H.trace().real();
  CMat Q = p.H * p.H + trH * p.H + p.V * CMat::Identity(p.n, p.n);
  double scale = 1.0 + p.H.cwiseAbs().maxCoeff();
  return p.T.norm() <= tol.zero * scale && Q.cwiseAbs().maxCoeff() <= tol.zero * scale * scale;
}

}  // namespace

CVec admissible_direction(const StructurePoint& p, const Vec& seed, const Tolerances& tol) {
  if (seed.size() != p.n) throw parameter_error("admissible_direction: wrong seed size");
  if (stationary_point(p, tol)) {
    Vec w = seed;
    if (w.norm() == 0.0) throw parameter_error("admissible_direction: zero seed");
    return (w / w.norm()).cast<Complex>();
  }
  ChamberForm cf = normal_form(p, tol);
  // in the chamber frame T is real, so any real direction w makes T_a* w real;
  // zero the components on clusters with T_a = V_a = 0
  SpectralData sd = spectral_data(cf.point, tol);
  Vec w = seed;
  int idx = 0;
  for (const auto& cl : sd.clusters) {
    double vscale = 1.0 + std::abs(cf.point.V);
    bool dead = cl.Tsq <= tol.zero * (1.0 + p.T.squaredNorm()) &&
                std::abs(cl.V) <= tol.zero * vscale;
    for (int j = 0; j < cl.n; ++j, ++idx)
      if (dead) w(idx) = 0.0;
  }
  if (w.norm() == 0.0)
    throw parameter_error("admissible_direction: seed vanishes on the admissible subspace");
  w /= w.norm();
  // rotate back to the original frame: chamber = a . p, so w_orig = a* w
  return cf.unitary.adjoint() * w.cast<Complex>();
}

ConstantFactorReport constant_factor_check(const StructurePath& path, const Tolerances& tol) {
  if (path.points.empty()) throw parameter_error("constant_factor_check: empty path");
  const StructurePoint& p0 = path.points.front();

  // verify the direction admissibility at the start
  if (!stationary_point(p0, tol)) {
    Eigen::SelfAdjointEigenSolver<CMat> es(p0.H);
    Vec vals = es.eigenvalues().reverse();
    CMat vecs(p0.n, p0.n);
    for (int i = 0; i < p0.n; ++i) vecs.col(i) = es.eigenvectors().col(p0.n - 1 - i);
    SpectralData sd = spectral_data(p0, tol);
    int idx = 0;
    double tscale = 1.0 + p0.T.squaredNorm();
    double vscale = 1.0 + std::abs(p0.V);
    for (const auto& cl : sd.clusters) {
      CVec t_a = CVec::Zero(p0.n), w_a = CVec::Zero(p0.n);
      for (int j = 0; j < cl.n; ++j, ++idx) {
        Complex tc = vecs.col(idx).dot(p0.T);
        Complex wc = vecs.col(idx).dot(path.direction);
        t_a += tc * vecs.col(idx);
        w_a += wc * vecs.col(idx);
      }
      bool t_zero = cl.Tsq <= tol.zero * tscale;
      if (!t_zero) {
        Complex tw = (t_a.adjoint() * path.direction)(0, 0);
        if (std::abs(tw.imag()) > 1e-8 * (1.0 + std::abs(tw)))
          throw error("precondition", "constant_factor_check: T_a* w is not real");
      } else if (std::abs(cl.V) <= tol.zero * vscale) {
        if (w_a.norm() > 1e-8)
          throw error("precondition",
                      "constant_factor_check: w not orthogonal to a T=V=0 cluster");
      }
    }
  }

  ConstantFactorReport rep;
  ReducedPolys rp = reduced_polys(p0, tol);
  rep.p_hpp = rp.p_hpp;
  if (rp.p_hpp.degree() == 0) {
    rep.vacuous = true;
    return rep;
  }

  std::vector<Root> fixed = rp.p_hpp.roots(tol.root_imag, tol.cluster);
  for (const StructurePoint& p : path.points) {
    RealPolynomial ph = momentum_poly(p);
    auto [quot, rem] = ph.divide(rp.p_hpp);
    (void)quot;
    rep.max_coeff_residual = std::max(rep.max_coeff_residual, rem.cwiseAbs().maxCoeff());
    // designated eigenvalues stay put
    Eigen::SelfAdjointEigenSolver<CMat> es(p.H, Eigen::EigenvaluesOnly);
    for (const Root& r : fixed) {
      double best = 1e300;
      for (int i = 0; i < p.n; ++i)
        best = std::min(best, std::abs(es.eigenvalues()(i) - r.value.real()));
      rep.max_root_drift = std::max(rep.max_root_drift, best);
    }
  }
  return rep;
}

}  // namespace bk
