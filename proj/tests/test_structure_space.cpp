#include <doctest.h>

#include "bk/classification.hpp"
#include "bk/structure_space.hpp"
#include "helpers.hpp"

using namespace bk;

namespace {
StructurePoint fixture_diag(std::initializer_list<double> hdiag,
                            std::initializer_list<Complex> t, double v) {
  int n = static_cast<int>(hdiag.size());
  CMat H = CMat::Zero(n, n);
  int i = 0;
  for (double h : hdiag) H(i, i) = h, ++i;
  CVec T(n);
  i = 0;
  for (Complex c : t) T(i++) = c;
  return StructurePoint(H, T, v);
}
}  // namespace

TEST_CASE("unitary action") {
  StructurePoint p = fixture_diag({2.0, 1.0}, {Complex(0, 0), Complex(0, 3)}, 5.0);
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = Complex(0, -1);
  StructurePoint q = unitary_act(p, a);
  CHECK(q.H(0, 0).real() == doctest::Approx(2.0));
  CHECK(q.H(1, 1).real() == doctest::Approx(1.0));
  CHECK(q.T(1).real() == doctest::Approx(3.0));
  CHECK(std::abs(q.T(1).imag()) < 1e-14);
  CHECK(q.V == doctest::Approx(5.0));

  // identity fixes everything
  StructurePoint r = unitary_act(p, CMat::Identity(2, 2));
  CHECK((r.H - p.H).cwiseAbs().maxCoeff() < 1e-15);

  // invariants are preserved under random unitaries
  for (int trial = 0; trial < 30; ++trial) {
    StructurePoint x = testing::random_point(3);
    CMat u = testing::random_unitary(3);
    Vec before = invariants_phi(x).flat();
    Vec after = invariants_phi(unitary_act(x, u)).flat();
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + before.cwiseAbs().maxCoeff()));
  }

  // non-unitary a is rejected
  CMat bad = 2.0 * CMat::Identity(2, 2);
  CHECK_THROWS_AS(unitary_act(p, bad), error);
}

TEST_CASE("scaling weights") {
  StructurePoint p = fixture_diag({2.0}, {Complex(1, 0)}, 3.0);
  StructurePoint s1 = scale(p, 1.0);
  CHECK((s1.H - p.H).cwiseAbs().maxCoeff() < 1e-15);
  StructurePoint s4 = scale(p, 4.0);
  CHECK(s4.H(0, 0).real() == doctest::Approx(0.5));
  CHECK(s4.T(0).real() == doctest::Approx(0.125));
  CHECK(s4.V == doctest::Approx(0.1875));
  CHECK_THROWS_AS(scale(p, -1.0), error);

  // C_k scales by c^{-k}
  StructurePoint x = testing::random_point(3);
  ConservedVector c0 = conserved_Ck(x);
  ConservedVector c2 = conserved_Ck(scale(x, 2.0));
  for (int k = 2; k <= 5; ++k)
    CHECK(c2.at(k) == doctest::Approx(c0.at(k) / std::pow(2.0, k)).epsilon(1e-10));
}

TEST_CASE("normal form") {
  StructurePoint p = fixture_diag({1.0, 2.0}, {Complex(0, 1), Complex(0, 0)}, 0.0);
  ChamberForm cf = normal_form(p);
  CHECK(cf.point.H(0, 0).real() == doctest::Approx(2.0));
  CHECK(cf.point.H(1, 1).real() == doctest::Approx(1.0));
  CHECK(cf.point.T(0).real() == doctest::Approx(0.0));
  CHECK(cf.point.T(1).real() == doctest::Approx(1.0));

  SUBCASE("phi preserving and idempotent") {
    for (int trial = 0; trial < 20; ++trial) {
      StructurePoint x = testing::random_point(3);
      ChamberForm c1 = normal_form(x);
      Vec phi0 = invariants_phi(x).flat();
      Vec phi1 = invariants_phi(c1.point).flat();
      CHECK((phi0 - phi1).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + phi0.cwiseAbs().maxCoeff()));
      ChamberForm c2 = normal_form(c1.point);
      CHECK((c2.point.H - c1.point.H).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((c2.point.T - c1.point.T).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("double eigenvalue carries |t| on the first slot of the block") {
    CMat H = CMat::Zero(3, 3);
    H(0, 0) = 2.0;
    H(1, 1) = 2.0;
    H(2, 2) = -1.0;
    CVec T(3);
    T << Complex(1, 1), Complex(0, 2), Complex(0.5, 0);
    StructurePoint x(H, T, 0.7);
    ChamberForm cf2 = normal_form(x);
    double block_norm = std::sqrt(std::norm(T(0)) + std::norm(T(1)));
    CHECK(cf2.point.T(0).real() == doctest::Approx(block_norm));
    CHECK(std::abs(cf2.point.T(1)) < 1e-12);
    CHECK(cf2.point.T(2).real() == doctest::Approx(0.5));
  }
}

TEST_CASE("invariants") {
  // n = 1: phi = (h, v, |t|^2)
  StructurePoint p1 = fixture_diag({0.7}, {Complex(0.3, 0.4)}, -2.0);
  InvariantVector phi = invariants_phi(p1);
  CHECK(phi.a(0) == doctest::Approx(0.7));
  CHECK(phi.b(0) == doctest::Approx(-2.0));
  CHECK(phi.b(1) == doctest::Approx(0.25));

  StructurePoint zero = fixture_diag({0.0, 0.0}, {Complex(0, 0), Complex(0, 0)}, 0.0);
  CHECK(invariants_phi(zero).flat().cwiseAbs().maxCoeff() == 0.0);

  StructurePoint p2 = fixture_diag({1.0, -1.0}, {Complex(1, 0), Complex(1, 0)}, 2.0);
  InvariantVector phi2 = invariants_phi(p2);
  CHECK(phi2.a(0) == doctest::Approx(0.0));
  CHECK(phi2.a(1) == doctest::Approx(2.0));
  CHECK(phi2.b(0) == doctest::Approx(2.0));
  CHECK(phi2.b(1) == doctest::Approx(2.0));
  CHECK(phi2.b(2) == doctest::Approx(0.0));
}

TEST_CASE("newton <-> elementary") {
  Vec zeros = Vec::Zero(4);
  CHECK(newton_to_elementary(zeros).cwiseAbs().maxCoeff() == 0.0);

  Vec A(2);
  A << 3.0, 5.0;
  Vec h = newton_to_elementary(A);
  CHECK(h(0) == doctest::Approx(3.0));
  CHECK(h(1) == doctest::Approx(2.0));

  // brute-force elementary symmetric oracle on random eigenvalues
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 3;
    Vec lam(n);
    for (int i = 0; i < n; ++i) lam(i) = testing::uniform(-2, 2);
    Vec Ak(n);
    for (int k = 1; k <= n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::pow(lam(i), k);
      Ak(k - 1) = acc;
    }
    Vec got = newton_to_elementary(Ak);
    Vec want = elementary_symmetric(lam);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + want.cwiseAbs().maxCoeff()));
    // and the round trip
    Vec back = elementary_to_newton(got);
    CHECK((back - Ak).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + Ak.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("conserved quantities") {
  // n = 1: C_2 = V - H^2, C_3 = |T|^2 - HV
  StructurePoint p1 = fixture_diag({0.5}, {Complex(0.6, 0.8)}, 2.0);
  ConservedVector c = conserved_Ck(p1);
  CHECK(c.at(2) == doctest::Approx(2.0 - 0.25));
  CHECK(c.at(3) == doctest::Approx(1.0 - 0.5 * 2.0));
  CHECK(c.C1_defect < 1e-14);

  StructurePoint zero = fixture_diag({0.0, 0.0}, {Complex(0, 0), Complex(0, 0)}, 0.0);
  CHECK(conserved_Ck(zero).C.cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("C_k equal the characteristic polynomial coefficients") {
    for (int trial = 0; trial < 20; ++trial) {
      StructurePoint p = testing::random_point(2 + trial % 3);
      ConservedVector ck = conserved_Ck(p);
      RealPolynomial pc = char_poly_pC(p);
      int n = p.n;
      CHECK(std::abs(pc.coeff(n + 1)) < 1e-9 * (1 + pc.coeffs().cwiseAbs().maxCoeff()));
      for (int k = 2; k <= n + 2; ++k)
        CHECK(pc.coeff(n + 2 - k) ==
              doctest::Approx(ck.at(k)).epsilon(1e-9).scale(1 + std::abs(ck.at(k))));
      CHECK(ck.C1_defect < 1e-10 * (1 + pc.coeffs().cwiseAbs().maxCoeff()));
    }
  }

  SUBCASE("Cayley-Hamilton kills the k = n+3 expression") {
    for (int trial = 0; trial < 10; ++trial) {
      StructurePoint p = testing::random_point(3);
      RealPolynomial ph = momentum_poly(p);
      CMat acc = CMat::Zero(p.n, p.n);
      CMat Hk = CMat::Identity(p.n, p.n);
      for (int k = 0; k <= p.n; ++k) {
        acc += ph.coeff(k) * Hk;
        Hk = (Hk * p.H).eval();
      }
      double val = std::abs((p.T.adjoint() * acc * p.T)(0, 0));
      CHECK(val < 1e-9 * (1.0 + p.T.squaredNorm() * acc.cwiseAbs().maxCoeff() + 1.0));
    }
  }
}

TEST_CASE("momentum data") {
  StructurePoint p = fixture_diag({2.0, -2.0}, {Complex(0, 0), Complex(0, 0)}, 0.0);
  Vec h = momentum_h(p);
  CHECK(h(0) == doctest::Approx(0.0));
  CHECK(h(1) == doctest::Approx(-4.0));

  StructurePoint zero = fixture_diag({0.0, 0.0}, {Complex(0, 0), Complex(0, 0)}, 0.0);
  CHECK(momentum_h(zero).cwiseAbs().maxCoeff() == 0.0);

  // space-form point of Example 5 (n = 2, p = 1, c = 8): p_h = t^2 - 4
  StructurePoint sf = fixture_diag({-2.0, 2.0}, {Complex(0, 0), Complex(0, 0)}, -4.0);
  RealPolynomial ph = momentum_poly(sf);
  CHECK(ph.coeff(2) == doctest::Approx(1.0));
  CHECK(ph.coeff(1) == doctest::Approx(0.0));
  CHECK(ph.coeff(0) == doctest::Approx(-4.0));

  // p_h(t) = I identity: (t-1)^2
  StructurePoint id = fixture_diag({1.0, 1.0}, {Complex(0, 0), Complex(0, 0)}, 0.0);
  RealPolynomial phi_ = momentum_poly(id);
  CHECK(phi_.coeff(1) == doctest::Approx(-2.0));
  CHECK(phi_.coeff(0) == doctest::Approx(1.0));

  // determinant oracle at sample values of t
  for (int trial = 0; trial < 10; ++trial) {
    StructurePoint x = testing::random_point(3);
    RealPolynomial px = momentum_poly(x);
    for (double t : {-1.3, 0.4, 2.2}) {
      Complex det = (t * CMat::Identity(3, 3) - x.H).determinant();
      CHECK(std::abs(det - px(t)) < 1e-10 * (1.0 + std::abs(det)));
    }
  }
}

TEST_CASE("symmetry dimensions") {
  // generic minimal-symmetry point
  StructurePoint gen = fixture_diag({2.0, 1.0}, {Complex(1, 0), Complex(1, 0)}, 0.3);
  SymmetryDims d = symmetry_dims(gen);
  CHECK(d.dim_g0 == 0);
  CHECK(d.dim_g == 2);
  CHECK(d.cohomogeneity == 2);

  // flat model: T = 0, H = 0, V = 0
  StructurePoint flat = fixture_diag({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.0);
  SymmetryDims df = symmetry_dims(flat);
  CHECK(df.dim_g0 == 9);
  CHECK(df.dim_g == 15);
  CHECK(df.cohomogeneity == 0);

  // space form n = 2: V_a = 0 on both clusters
  StructurePoint sf = fixture_diag({-2.0, 2.0}, {Complex(0, 0), Complex(0, 0)}, -4.0);
  SymmetryDims ds = symmetry_dims(sf);
  CHECK(ds.dim_g0 == 2);
  CHECK(ds.dim_g == 6);
  CHECK(ds.cohomogeneity == 0);

  // dim g >= n always
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 4;
    StructurePoint x = testing::random_point(n);
    CHECK(symmetry_dims(x).dim_g >= n);
  }
}

TEST_CASE("scale normalization helpers") {
  StructurePoint p = testing::random_point(2, 2.0);
  StructurePoint q = scale_normalize(p);
  InvariantVector phi = invariants_phi(q);
  double mu = 0.0;
  for (int k = 1; k <= 2; ++k) mu = std::max(mu, std::pow(std::abs(phi.a(k - 1)), 1.0 / k));
  for (int k = 2; k <= 4; ++k) mu = std::max(mu, std::pow(std::abs(phi.b(k - 2)), 1.0 / k));
  CHECK(mu == doctest::Approx(1.0).epsilon(1e-9));

  // the normalized h of a scaled point matches
  Vec h = momentum_h(p);
  Vec h2 = momentum_h(scale(p, 3.7));
  CHECK((scale_normalize_h(h) - scale_normalize_h(h2)).cwiseAbs().maxCoeff() < 1e-10);
}
