#include "bk/curvature.hpp"

#include <cmath>
#include <map>

#include "bk/explicit_metrics.hpp"
#include "bk/structure_space.hpp"

namespace bk {

MetricField flat_metric(int q) {
  MetricField f;
  f.q = q;
  f.name = "flat";
  f.eval = [q](const CVec&) { return CMat(CMat::Identity(q, q)); };
  return f;
}

double CurvatureTensor::frobenius() const {
  double acc = 0.0;
  for (const Complex& c : data_) acc += std::norm(c);
  return std::sqrt(acc);
}

double CurvatureTensor::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < q_; ++i)
    for (int j = 0; j < q_; ++j)
      for (int k = 0; k < q_; ++k)
        for (int l = 0; l < q_; ++l) {
          worst = std::max(worst, std::abs(at(i, j, k, l) - at(k, j, i, l)));
          worst = std::max(worst, std::abs(at(i, j, k, l) - at(i, l, k, j)));
          // conjugate-pair symmetry R_{ijkl} = conj(R_{jilk})
          worst = std::max(worst, std::abs(at(i, j, k, l) - std::conj(at(j, i, l, k))));
        }
  return worst / (1.0 + frobenius());
}

namespace {

// stencil cache over integer offsets in units of step/2
class StencilEval {
 public:
  StencilEval(const MetricField& field, const CVec& z, double unit)
      : field_(field), z_(z), unit_(unit), dim_(2 * static_cast<int>(z.size())) {}

  const CMat& at(const std::vector<int>& offsets) {
    auto it = cache_.find(offsets);
    if (it != cache_.end()) return it->second;
    CVec z = z_;
    for (int a = 0; a < dim_; ++a) {
      if (offsets[a] == 0) continue;
      Complex delta = (a % 2 == 0) ? Complex(offsets[a] * unit_, 0.0)
                                   : Complex(0.0, offsets[a] * unit_);
      z(a / 2) += delta;
    }
    return cache_.emplace(offsets, field_.eval(z)).first->second;
  }

  // 4th-order first derivative along real coordinate a at grid scale s (units)
  CMat d1(int a, int s, const std::vector<int>& base) {
    auto off = [&](int mult) {
      std::vector<int> o = base;
      o[a] += mult * s;
      return at(o);
    };
    return (off(-2) - 8.0 * off(-1) + 8.0 * off(1) - off(2)) / (12.0 * s * unit_);
  }

  // 4th-order pure second derivative along a at grid scale s
  CMat d2(int a, int s) {
    std::vector<int> base(dim_, 0);
    auto off = [&](int mult) {
      std::vector<int> o = base;
      o[a] = mult * s;
      return at(o);
    };
    double h = s * unit_;
    return (-off(2) + 16.0 * off(1) - 30.0 * off(0) + 16.0 * off(-1) - off(-2)) /
           (12.0 * h * h);
  }

  // mixed second derivative d_a d_b (a != b), two nested 4th-order stencils
  CMat dmixed(int a, int b, int s) {
    std::vector<int> base(dim_, 0);
    auto row = [&](int mult) {
      std::vector<int> o = base;
      o[b] = mult * s;
      return d1(a, s, o);
    };
    return (row(-2) - 8.0 * row(-1) + 8.0 * row(1) - row(2)) / (12.0 * s * unit_);
  }

  // Richardson: combine grid scales 2 and 1 (i.e. h and h/2)
  CMat d2_rich(int a) { return (16.0 * d2(a, 1) - d2(a, 2)) / 15.0; }
  CMat dmixed_rich(int a, int b) { return (16.0 * dmixed(a, b, 1) - dmixed(a, b, 2)) / 15.0; }
  CMat d1_rich(int a) {
    std::vector<int> base(dim_, 0);
    return (16.0 * d1(a, 1, base) - d1(a, 2, base)) / 15.0;
  }

 private:
  const MetricField& field_;
  CVec z_;
  double unit_;
  int dim_;
  std::map<std::vector<int>, CMat> cache_;
};

}  // namespace

CurvatureTensor kahler_curvature(const MetricField& field, const CVec& z, double step) {
  int q = field.q;
  double h = step * (1.0 + z.norm());
  double margin = field.margin(z);
  if (margin < 2.5 * h) h = margin / 4.0;
  if (!(h > 1e-7))
    throw domain_error("kahler_curvature: step does not fit inside the domain margin");

  StencilEval st(field, z, h / 2.0);  // integer offsets in units of h/2

  // Wirtinger first derivatives dG/dz_k and second derivatives d2G/dz_k dzbar_l
  std::vector<CMat> dz(q);
  for (int k = 0; k < q; ++k) {
    CMat dx = st.d1_rich(2 * k), dy = st.d1_rich(2 * k + 1);
    dz[k] = (dx - Complex(0, 1) * dy) / 2.0;
  }
  std::vector<std::vector<CMat>> dzzbar(q, std::vector<CMat>(q));
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) {
      CMat xx = (k == l) ? st.d2_rich(2 * k) : st.dmixed_rich(2 * k, 2 * l);
      CMat yy = (k == l) ? st.d2_rich(2 * k + 1) : st.dmixed_rich(2 * k + 1, 2 * l + 1);
      CMat xy = st.dmixed_rich(2 * k, 2 * l + 1);
      CMat yx = st.dmixed_rich(2 * k + 1, 2 * l);
      dzzbar[k][l] = (xx + yy + Complex(0, 1) * (xy - yx)) / 4.0;
    }

  CMat G = field.eval(z);
  CMat W = G.inverse();
  CurvatureTensor R(q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) {
      // dG/dzbar_l is the adjoint of dG/dz_l for Hermitian G
      CMat second = dz[k] * W * dz[l].adjoint();
      CMat block = -dzzbar[k][l] + second;
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) R.at(i, j, k, l) = block(i, j);
    }
  return R;
}

namespace {

// raw Ricci coefficient matrix P_{k lbar} = g^{i jbar} R_{i jbar k lbar}
CMat ricci_raw(const CurvatureTensor& R, const CMat& G) {
  int q = R.q();
  CMat W = G.inverse();
  CMat P = CMat::Zero(q, q);
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) acc += W(j, i) * R.at(i, j, k, l);
      P(k, l) = acc;
    }
  return CMat(((P + P.adjoint()) / 2.0).eval());
}

CMat inv_sqrt(const CMat& G) {
  Eigen::SelfAdjointEigenSolver<CMat> es(G);
  return es.operatorInverseSqrt();
}

// model Bochner curvature: form_constant * (Smat (x) G four-term sum)
CurvatureTensor model_form(const CMat& Smat, const CMat& G, double form_constant) {
  int q = static_cast<int>(G.rows());
  CurvatureTensor F(q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l)
          F.at(i, j, k, l) = form_constant * (Smat(i, j) * G(k, l) + G(i, j) * Smat(k, l) +
                                              Smat(i, l) * G(k, j) + G(i, l) * Smat(k, j));
  return F;
}

double tensor_dot(const CurvatureTensor& A, const CurvatureTensor& B) {
  double acc = 0.0;
  int q = A.q();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l)
          acc += (std::conj(A.at(i, j, k, l)) * B.at(i, j, k, l)).real();
  return acc;
}

// S endomorphism from Ricci: G^{-1} P = -(n+2) S - (tr S) I
CMat s_endo_from_ricci(const CMat& G, const CMat& P) {
  int n = static_cast<int>(G.rows());
  CMat E = G.inverse() * P;
  Complex sigma0 = -E.trace() / (2.0 * (n + 1));
  return CMat((-(E + sigma0 * CMat::Identity(n, n)) / (n + 2)).eval());
}

CalibrationRecord solve_calibration() {
  CalibrationRecord cal;

  // flat fixture: curvature must vanish identically
  {
    MetricField flat = flat_metric(2);
    CVec z = CVec::Zero(2);
    CurvatureTensor R = kahler_curvature(flat, z);
    cal.flat_residual = R.frobenius();
    if (cal.flat_residual > 1e-10)
      throw numerical_error("calibration: flat metric has nonzero curvature");
  }

  // a = 0 rotationally symmetric fixture at z = 0, n = 2, k = 8:
  // Ricci eigenvalues are -2(n+1)k; this locks ricci_scale
  {
    RotSymParams prm{2, 8.0, 0.0, RotSymBranch::type_one};
    MetricField f = rotsym_metric(prm);
    CVec z = CVec::Zero(2);
    CurvatureTensor R = kahler_curvature(f, z);
    CMat G = f.eval(z);
    CMat P = ricci_raw(R, G);
    double target = -2.0 * (prm.n + 1) * prm.k;
    // least squares for the single scale: min || s P - target I ||_F
    double num = (P.adjoint() * (target * CMat::Identity(2, 2))).trace().real();
    double den = (P.adjoint() * P).trace().real();
    cal.ricci_scale = num / den;
    cal.ricci_fit_defect = (cal.ricci_scale * P - target * CMat::Identity(2, 2)).norm();
    if (cal.ricci_fit_defect > 1e-6)
      throw numerical_error("calibration: rotsym Ricci fixture defect too large");

    // form constant from the same space-form fixture
    CMat S = s_endo_from_ricci(G, P);
    CMat Smat = G * S;
    Smat = (Smat + Smat.adjoint()) / 2.0;
    CurvatureTensor F = model_form(Smat, G, 1.0);
    cal.form_constant = tensor_dot(F, R) / tensor_dot(F, F);

    // holomorphic sectional curvature scale: M_c with c = -2k
    CVec v(2);
    v << 1.0, 0.5;
    Complex acc = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            acc += R.at(i, j, k, l) * v(i) * std::conj(v(j)) * v(k) * std::conj(v(l));
    double norm2 = (v.adjoint() * G * v)(0, 0).real();
    cal.hsc_scale = (-2.0 * prm.k) / (acc.real() / (norm2 * norm2));
  }

  // scalar scale from the n = 1 family: scalar must equal the Gaussian
  // curvature K = -12 h_1 = -4k at the origin
  {
    RotSymParams prm{1, -1.0, 0.0, RotSymBranch::type_one};
    MetricField f = rotsym_metric(prm);
    CVec z = CVec::Zero(1);
    CurvatureTensor R = kahler_curvature(f, z);
    CMat G = f.eval(z);
    CMat P = ricci_raw(R, G);
    double raw = (G.inverse() * (cal.ricci_scale * P)).trace().real();
    cal.scalar_scale = (-4.0 * prm.k) / raw;
    if (std::abs(cal.scalar_scale - 1.0) > 1e-6)
      throw numerical_error("calibration: scalar scale fixture defect too large");
  }
  return cal;
}

}  // namespace

const CalibrationRecord& calibration() {
  static const CalibrationRecord cal = solve_calibration();
  return cal;
}

std::pair<CMat, double> ricci_scalar(const CurvatureTensor& R, const CMat& G,
                                     const CalibrationRecord& cal) {
  CMat P = ricci_raw(R, G);
  CMat ricci = cal.ricci_scale * P;
  double scalar = cal.scalar_scale * (G.inverse() * ricci).trace().real();
  return {ricci, scalar};
}

std::pair<CMat, double> bochner_residual(const CurvatureTensor& R, const CMat& G,
                                         const CalibrationRecord& cal) {
  CMat P = ricci_raw(R, G);
  CMat S = s_endo_from_ricci(G, P);
  CMat Smat = G * S;
  Smat = (Smat + Smat.adjoint()) / 2.0;
  CurvatureTensor F = model_form(Smat, G, cal.form_constant);

  int q = R.q();
  double num = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l)
          num += std::norm(R.at(i, j, k, l) - F.at(i, j, k, l));
  double residual = std::sqrt(num) / (1.0 + R.frobenius());

  CMat Gis = inv_sqrt(G);
  CMat S_frame = Gis * Smat * Gis;
  S_frame = (S_frame + S_frame.adjoint()) / 2.0;
  return {S_frame, residual};
}

MomentumExtraction extract_momentum(const MetricField& field, const CVec& z, double step,
                                    const CalibrationRecord& cal) {
  int n = field.q;
  CurvatureTensor R = kahler_curvature(field, z, step);
  CMat G = field.eval(z);
  CMat P = ricci_raw(R, G);
  // Omega-normalized Ricci endomorphism has coefficient matrix ricci_scale * P
  CMat rho_low = cal.ricci_scale * P;
  double trace = (G.inverse() * rho_low).trace().real();
  // eta lowered: (tr/(2(n+1)(n+2))) G - rho_low / (2(n+2)): Hermitian
  CMat eta_low = (trace / (2.0 * (n + 1) * (n + 2))) * G - rho_low / (2.0 * (n + 2));
  CMat Gis = inv_sqrt(G);
  CMat H_frame = Gis * eta_low * Gis;
  H_frame = (H_frame + H_frame.adjoint()) / 2.0;

  MomentumExtraction out;
  out.H_fit = H_frame;
  Eigen::SelfAdjointEigenSolver<CMat> es(H_frame, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + n);
  out.p_h = RealPolynomial::from_real_roots(eigs);
  Vec A(n);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (double e : eigs) acc += std::pow(e, k);
    A(k - 1) = acc;
  }
  out.h = newton_to_elementary(A);
  return out;
}

double holo_sect_curvature(const CurvatureTensor& R, const CMat& G, const CVec& v,
                           const CalibrationRecord& cal) {
  if (v.norm() == 0.0) throw parameter_error("holo_sect_curvature: v must be nonzero");
  int q = R.q();
  Complex acc = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l)
          acc += R.at(i, j, k, l) * v(i) * std::conj(v(j)) * v(k) * std::conj(v(l));
  double norm2 = (v.adjoint() * G * v)(0, 0).real();
  return cal.hsc_scale * acc.real() / (norm2 * norm2);
}

CurvatureReport curvature_report(const MetricField& field, const CVec& z, double step,
                                 const CalibrationRecord& cal) {
  CurvatureReport rep;
  rep.z = z;
  rep.R = kahler_curvature(field, z, step);
  rep.G = field.eval(z);
  auto [ricci, scalar] = ricci_scalar(rep.R, rep.G, cal);
  rep.Ricci = ricci;
  rep.scalar = scalar;
  auto [sfit, resid] = bochner_residual(rep.R, rep.G, cal);
  rep.S_fit = sfit;
  rep.bochner_residual = resid;
  MomentumExtraction mx = extract_momentum(field, z, step, cal);
  rep.p_h_extracted = mx.p_h;
  rep.h_extracted = mx.h;
  rep.symmetry_defect = rep.R.symmetry_defect();
  return rep;
}

MetricField weighted_reduction_metric(const std::vector<int>& weights) {
  if (weights.size() < 2 || weights[0] != 1)
    throw parameter_error("weighted_reduction_metric: weights start at 1");
  int m = static_cast<int>(weights.size()) - 1;
  std::vector<int> w = weights;
  MetricField f;
  f.q = m;
  f.name = "weighted-reduction";
  f.eval = [w, m](const CVec& zc) {
    // point on the level set sum w_j |Z_j|^2 = 1 over the chart point
    auto level = [&](double r) {
      double acc = w[0] * r * r - 1.0;
      for (int j = 0; j < m; ++j)
        acc += w[j + 1] * std::norm(zc(j)) * std::pow(r, 2 * w[j + 1]);
      return acc;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (level(mid) < 0.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    CVec Z(m + 1);
    Z(0) = r;
    for (int j = 0; j < m; ++j) Z(j + 1) = zc(j) * std::pow(r, w[j + 1]);

    // chart map pi(Z) = (Z_2/Z_1^{w_2}, ...); complex Jacobian J (m x (m+1))
    CMat J = CMat::Zero(m, m + 1);
    for (int j = 0; j < m; ++j) {
      J(j, 0) = -static_cast<double>(w[j + 1]) * Z(j + 1) / std::pow(Z(0), w[j + 1] + 1);
      J(j, j + 1) = Complex(1.0, 0.0) / std::pow(Z(0), static_cast<double>(w[j + 1]));
    }
    // horizontal space: complex orthogonal complement of the action generator
    CVec gen(m + 1);
    for (int j = 0; j <= m; ++j) gen(j) = Complex(0.0, 1.0) * static_cast<double>(w[j]) * Z(j);
    Eigen::JacobiSVD<CMat> svd(gen.adjoint(), Eigen::ComputeFullV);
    CMat B = svd.matrixV().rightCols(m);  // orthonormal basis of ker(gen*)
    CMat A = J * B;
    CMat M = (A * A.adjoint()).inverse();
    return CMat(((M + M.adjoint()) / 2.0).eval());
  };
  return f;
}

}  // namespace bk
