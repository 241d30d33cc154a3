#include <doctest.h>

#include "bk/cell_metric.hpp"
#include "bk/classification.hpp"
#include "helpers.hpp"

using namespace bk;

namespace {
StructurePoint diag_point(std::initializer_list<double> hdiag, std::initializer_list<double> t,
                          double v) {
  int n = static_cast<int>(hdiag.size());
  CMat H = CMat::Zero(n, n);
  CVec T = CVec::Zero(n);
  int i = 0;
  for (double h : hdiag) H(i, i) = h, ++i;
  i = 0;
  for (double x : t) T(i++) = x;
  return StructurePoint(H, T, v);
}

const StructurePoint kSpaceForm = diag_point({-2.0, 2.0}, {0.0, 0.0}, -4.0);
}  // namespace

TEST_CASE("spectral data") {
  SpectralData sd = spectral_data(kSpaceForm);
  REQUIRE(sd.clusters.size() == 2);
  CHECK(sd.clusters[0].V == doctest::Approx(0.0));
  CHECK(sd.clusters[1].V == doctest::Approx(0.0));
  CHECK(sd.clusters[0].m == 0);
  CHECK(sd.m == 0);

  StructurePoint one = diag_point({0.0, 0.0}, {0.0, 0.0}, 1.0);
  SpectralData s1 = spectral_data(one);
  REQUIRE(s1.clusters.size() == 1);
  CHECK(s1.clusters[0].V == doctest::Approx(1.0));
  CHECK(s1.clusters[0].m == 1);

  StructurePoint gen = diag_point({2.0, 1.0}, {1.0, 1.0}, 0.0);
  SpectralData s2 = spectral_data(gen);
  CHECK(s2.clusters[0].m == 1);
  CHECK(s2.clusters[1].m == 1);
  CHECK(s2.m == 2);
}

TEST_CASE("characteristic polynomial") {
  // Example 6 with p = 1, r = 1: (t+2)^2 (t-2)^2 = t^4 - 8 t^2 + 16
  RealPolynomial pc = char_poly_pC(kSpaceForm);
  CHECK(pc.coeff(4) == doctest::Approx(1.0));
  CHECK(pc.coeff(3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pc.coeff(2) == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(pc.coeff(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pc.coeff(0) == doctest::Approx(16.0).epsilon(1e-12));

  StructurePoint zero = diag_point({0.0, 0.0}, {0.0, 0.0}, 0.0);
  RealPolynomial pz = char_poly_pC(zero);
  for (int k = 0; k < 4; ++k) CHECK(pz.coeff(k) == 0.0);

  // worked m = 1 fixture: (H, T, V) = (-1/2, sqrt(0.375), -3/4) gives t^3 - t
  StructurePoint w = diag_point({-0.5}, {std::sqrt(0.375)}, -0.75);
  RealPolynomial pw = char_poly_pC(w);
  CHECK(pw.coeff(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pw.coeff(1) == doctest::Approx(-1.0));
  CHECK(pw.coeff(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("reduced polynomials") {
  SUBCASE("space form") {
    ReducedPolys rp = reduced_polys(kSpaceForm);
    CHECK(rp.m == 0);
    CHECK(rp.p_D.degree() == 2);
    CHECK(rp.p_D.coeff(0) == doctest::Approx(-4.0));
    CHECK(rp.p_hpp.coeff(0) == doctest::Approx(-4.0));
  }
  SUBCASE("cohomogeneity-n point") {
    StructurePoint gen = diag_point({2.0, 1.0}, {1.0, 0.5}, 0.3);
    ReducedPolys rp = reduced_polys(gen);
    CHECK(rp.m == 2);
    CHECK(rp.p_hpp.degree() == 0);
    RealPolynomial pc = char_poly_pC(gen);
    CHECK((rp.p_D.coeffs() - pc.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("Prop 5: roots of p_hpp are roots of p_D") {
    // rotationally symmetric shape (n = 2, k = 8, a = 1): p_hpp = (t - 2)
    RealPolynomial pC =
        RealPolynomial::from_real_roots({2.0, 2.0}) * RealPolynomial::from_descending({1.0, 4.0, -11.0});
    RealPolynomial pD =
        RealPolynomial::from_real_roots({2.0}) * RealPolynomial::from_descending({1.0, 4.0, -11.0});
    auto cells = classify_cells(pD);
    REQUIRE(!cells.empty());
    // pick the 4-1 cell (momentum above the largest root)
    const MomentumCell* cell = nullptr;
    for (auto& c : cells)
      if (c.case_index == 1) cell = &c;
    REQUIRE(cell != nullptr);
    Vec k(1);
    k << 2.5;
    StructurePoint p = construct_from_cell(pC, pD, *cell, k);
    ReducedPolys rp = reduced_polys(p);
    CHECK(rp.m == 1);
    CHECK(rp.p_hpp.degree() == 1);
    CHECK(rp.p_hpp(2.0) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(rp.p_D.degree() == 3);
    CHECK(std::abs(rp.p_D(2.0)) < 1e-8);  // Prop 5
  }
}

TEST_CASE("classify cells") {
  SUBCASE("Case 4 fixture (t-1)t(t+1)") {
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -1.0});
    auto cells = classify_cells(pD);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].tag() == "Case4-0");
    CHECK(cells[1].tag() == "Case4-1");
    // 4-0 band [-1, 0]
    CHECK(cells[0].bands[0].lo == doctest::Approx(-1.0));
    CHECK(cells[0].bands[0].hi == doctest::Approx(0.0));
    CHECK(cells[0].bands[0].lo_closed);
    CHECK(cells[0].bands[0].hi_closed);
    CHECK(cells[0].bounded);
    // 4-1 band [1, inf)
    CHECK(cells[1].bands[0].lo == doctest::Approx(1.0));
    CHECK(std::isinf(cells[1].bands[0].hi));
    CHECK(!cells[1].bounded);
  }
  SUBCASE("Case 2 triple root") {
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 1.0, 1.0});
    auto cells = classify_cells(pD);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].tag() == "Case2-1");
    CHECK(cells[0].bands[0].lo == doctest::Approx(1.0));
    CHECK(!cells[0].bands[0].lo_closed);  // triple root excluded
    CHECK(std::isinf(cells[0].bands[0].hi));
  }
  SUBCASE("Case 1 with a complex pair") {
    RealPolynomial pD =
        RealPolynomial::from_real_roots({1.0}) * RealPolynomial::from_descending({1.0, 0.0, 1.0});
    auto cells = classify_cells(pD);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].tag() == "Case1");
    CHECK(cells[0].bands[0].lo == doctest::Approx(1.0));
    CHECK(cells[0].bands[0].lo_closed);
    CHECK(!cells[0].bounded);
  }
  SUBCASE("Case 3 double root gives a/b cells") {
    // roots: 1 (double), 0, -2 => m = 2, double at r_1: cells 3-1a and 3-1b
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 1.0, 0.0, -2.0});
    auto cells = classify_cells(pD);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].tag() == "Case3-1a");
    CHECK(cells[1].tag() == "Case3-1b");
    CHECK(!cells[0].bounded);
    CHECK(cells[1].bounded);
    // 3-1b bands: I_1 = [0, 1), I_2 = [-2, 0]
    CHECK(cells[1].bands[0].lo == doctest::Approx(0.0));
    CHECK(cells[1].bands[0].hi == doctest::Approx(1.0));
    CHECK(!cells[1].bands[0].hi_closed);
    CHECK(cells[1].bands[1].lo == doctest::Approx(-2.0));
  }
  SUBCASE("double at the smallest root gives one cell") {
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, -0.5, -0.5});
    auto cells = classify_cells(pD);  // m = 1, double at r_2 = r_{m+1}
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].tag() == "Case3-2b");
  }
  SUBCASE("invalid patterns are rejected") {
    CHECK_THROWS_AS(classify_cells(RealPolynomial::from_real_roots({1.0, 1.0, 1.0, 1.0})), error);
    RealPolynomial bad =
        RealPolynomial::from_real_roots({1.0, 1.0}) * RealPolynomial::from_descending({1.0, 0.0, 1.0});
    CHECK_THROWS_AS(classify_cells(bad), error);
  }
}

TEST_CASE("cell membership") {
  RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -1.0});
  auto cells = classify_cells(pD);
  const MomentumCell& c40 = cells[0];
  Vec k(1);
  k << -0.5;
  CHECK(cell_membership(c40, k) == Membership::interior);
  k << 0.0;
  CHECK(cell_membership(c40, k) == Membership::boundary);
  k << 0.5;
  CHECK(cell_membership(c40, k) == Membership::outside);
}

TEST_CASE("construct from cell") {
  RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -1.0});
  auto cells = classify_cells(pD);
  const MomentumCell& c40 = cells[0];

  SUBCASE("worked m = 1 fixture") {
    Vec k(1);
    k << -0.5;
    StructurePoint p = construct_from_cell(pD, pD, c40, k);
    CHECK(p.n == 1);
    CHECK(p.H(0, 0).real() == doctest::Approx(-0.5));
    CHECK(std::abs(p.T(0)) == doctest::Approx(std::sqrt(0.375)));
    CHECK(p.V == doctest::Approx(-0.75));
  }

  SUBCASE("vertex of the 4-0 cell has T = 0") {
    for (double kv : {0.0, -1.0}) {
      Vec k(1);
      k << kv;
      StructurePoint p = construct_from_cell(pD, pD, c40, k);
      CHECK(p.T.norm() < 1e-12);
      // the vertex value is a simple root of p_D; the cluster has V_a != 0
      SpectralData sd = spectral_data(p);
      CHECK(sd.m == 1);
    }
  }

  SUBCASE("m = 0 space form from its polynomials") {
    RealPolynomial pC2 = RealPolynomial::from_real_roots({2.0, 2.0, -2.0, -2.0});
    RealPolynomial pD2 = RealPolynomial::from_real_roots({2.0, -2.0});
    auto cells2 = classify_cells(pD2);
    REQUIRE(cells2.size() == 1);
    StructurePoint p = construct_from_cell(pC2, pD2, cells2[0], Vec(0));
    CHECK(p.n == 2);
    CHECK(p.V == doctest::Approx(-4.0));
    CHECK(p.T.norm() < 1e-14);
    Vec phi_got = invariants_phi(p).flat();
    Vec phi_want = invariants_phi(kSpaceForm).flat();
    CHECK((phi_got - phi_want).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("round trip over random interior points") {
    for (int trial = 0; trial < 15; ++trial) {
      const MomentumCell& cell = cells[trial % 2];
      double lo = cell.bands[0].lo;
      double hi = std::isinf(cell.bands[0].hi) ? lo + 3.0 : cell.bands[0].hi;
      Vec k(1);
      k << testing::uniform(lo + 1e-3, hi - 1e-3);
      StructurePoint p = construct_from_cell(pD, pD, cell, k);
      RealPolynomial pc = char_poly_pC(p);
      CHECK((pc.coeffs() - pD.coeffs()).cwiseAbs().maxCoeff() < 1e-8);
      ReducedPolys rp = reduced_polys(p);
      CHECK(rp.m == 1);
      CHECK((rp.p_D.coeffs() - pD.coeffs()).cwiseAbs().maxCoeff() < 1e-8);
      Vec h = momentum_h(p);  // n = m = 1: reduced momentum = momentum
      CHECK(h(0) == doctest::Approx(k(0)).epsilon(1e-8));
      // interior sign ladder (-1)^{i-1} p_D(lambda_i) > 0 (i = 1 here)
      CHECK(pD(k(0)) > 0.0);
    }
  }

  SUBCASE("k outside the cell is rejected") {
    Vec k(1);
    k << 0.5;
    CHECK_THROWS_AS(construct_from_cell(pD, pD, c40, k), error);
  }

  SUBCASE("Cor 3: no root of p_k is a multiple root of p_D on valid points") {
    RealPolynomial pD31 = RealPolynomial::from_real_roots({1.0, 1.0, -2.0});
    auto cells31 = classify_cells(pD31);
    // type b cell: band [-2, 1); membership at the double root 1 is 'outside'
    Vec k(1);
    k << 1.0;
    for (const auto& c : cells31) CHECK(cell_membership(c, k) == Membership::outside);
  }
}

TEST_CASE("verdicts") {
  RealPolynomial case1 =
      RealPolynomial::from_real_roots({1.0}) * RealPolynomial::from_descending({1.0, 0.0, 1.0});
  CaseVerdict v1 = verdict(classify_cells(case1)[0]);
  CHECK(!v1.bounded);
  CHECK(v1.completeness == Completeness::never_complete);

  RealPolynomial c31 = RealPolynomial::from_real_roots({1.0, 1.0, -2.0});
  auto cells31 = classify_cells(c31);
  REQUIRE(cells31.size() == 2);
  CaseVerdict vb = verdict(cells31[1]);
  CHECK(vb.bounded);
  CHECK(vb.completeness == Completeness::possibly_complete);

  RealPolynomial c4 = RealPolynomial::from_real_roots({1.0, 0.0, -1.0});
  CaseVerdict v40 = verdict(classify_cells(c4)[0]);
  CHECK(v40.bounded);
  CHECK(v40.completeness == Completeness::orbifold_only);
}

TEST_CASE("orbifold family") {
  auto [pC, pD] = orbifold_case40(1.0, {1, 2}, {0, 0, 0});
  // r_beta = (3, 0, -3)
  CHECK(pD(3.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pD(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pD(-3.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((pC.coeffs() - pD.coeffs()).cwiseAbs().maxCoeff() < 1e-12);

  SUBCASE("multiplicity-weighted root sum vanishes") {
    auto [pC2, pD2] = orbifold_case40(0.7, {2, 3, 5}, {1, 0, 2, 1});
    // t^{n+1} coefficient of p_C vanishes <=> weighted sum of roots is zero
    CHECK(std::abs(pC2.coeff(pC2.degree() - 1)) <
          1e-10 * pC2.coeffs().cwiseAbs().maxCoeff());
    // nu scaled up: p_D unchanged
    auto [pC3, pD3] = orbifold_case40(0.7, {2, 3, 5}, {2, 0, 2, 1});
    CHECK(pD3.degree() == pD2.degree());
    CHECK(pC3.degree() == pC2.degree() + 1);
  }
  SUBCASE("equal spacing gives an arithmetic ladder") {
    auto [pC4, pD4] = orbifold_case40(1.0, {1, 2, 3}, {0, 0, 0, 0});
    auto roots = pD4.real_roots();
    REQUIRE(roots.size() == 4);
    double d01 = roots[0].value.real() - roots[1].value.real();
    double d12 = roots[1].value.real() - roots[2].value.real();
    CHECK(d01 == doctest::Approx(d12));
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(orbifold_case40(1.0, {2, 4}, {0, 0, 0}), error);   // gcd 2
    CHECK_THROWS_AS(orbifold_case40(1.0, {2, 1}, {0, 0, 0}), error);   // not increasing
    CHECK_THROWS_AS(orbifold_case40(1.0, {1, 2}, {0, -1, 0}), error);  // negative nu
  }
}

TEST_CASE("reduced space curvature") {
  SUBCASE("space-form block point") {
    // M_c^1 x M_{-c}^1 with c = 8: p_D = (t+2)(t-2), constant roots +-2
    double cpos = reduced_space_curvature(2.0, kSpaceForm);
    double cneg = reduced_space_curvature(-2.0, kSpaceForm);
    CHECK(cpos == doctest::Approx(16.0));
    CHECK(cneg == doctest::Approx(-16.0));
  }
  SUBCASE("sign follows the band ladder") {
    // root multiset of p_C must sum to zero, so p_D has roots {1, 0, -2}
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -2.0});
    RealPolynomial pC = RealPolynomial::from_real_roots({1.0}) * pD;
    auto cells = classify_cells(pD);
    Vec k(1);
    k << -0.5;
    StructurePoint p = construct_from_cell(pC, pD, cells[0], k);
    // r = 1 with mu_0 = 0: (-1)^{mu} p_k(r) > 0, so c has the sign of p_D'(r)
    double c = reduced_space_curvature(1.0, p);
    CHECK(c > 0.0);
    CHECK(c == doctest::Approx(4.0 * pD.derivative_at(1.0) / (1.0 - k(0))));
  }
  SUBCASE("curvature weight under scaling") {
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -2.0});
    RealPolynomial pC = RealPolynomial::from_real_roots({1.0}) * pD;
    auto cells = classify_cells(pD);
    Vec k(1);
    k << -0.4;
    StructurePoint p = construct_from_cell(pC, pD, cells[0], k);
    double c1 = reduced_space_curvature(1.0, p);
    StructurePoint q = scale(p, 2.0);
    double c2 = reduced_space_curvature(0.5, q);  // root scales with weight 1
    CHECK(c2 == doctest::Approx(c1 / 2.0).epsilon(1e-8));
  }
  SUBCASE("singular configuration is rejected") {
    RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -2.0});
    RealPolynomial pC = RealPolynomial::from_real_roots({1.0}) * pD;
    auto cells = classify_cells(pD);
    Vec k(1);
    k << 1.0;  // on the face l_{r=1} = 0 of the 4-1 cell
    StructurePoint p = construct_from_cell(pC, pD, cells[1], k);
    CHECK_THROWS_AS(reduced_space_curvature(1.0, p), error);
  }
}
