#include <doctest.h>

#include "bk/batch.hpp"
#include "bk/explicit_metrics.hpp"
#include "helpers.hpp"

using namespace bk;

TEST_CASE("parallel curvature reports match the serial reference") {
  Vec rho(2);
  rho << 1.0, 2.0;
  MetricField f = grho_metric(rho);
  std::vector<CVec> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(testing::random_cvec(2, 0.8));
  auto serial = batch::curvature_reports(f, pts, 1e-3, batch::Exec::serial);
  auto parallel = batch::curvature_reports(f, pts, 1e-3, batch::Exec::parallel);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(serial[i].bochner_residual == parallel[i].bochner_residual);
    CHECK(serial[i].scalar == parallel[i].scalar);
    CHECK((serial[i].Ricci - parallel[i].Ricci).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("period scan") {
  SUBCASE("serial and parallel agree exactly") {
    auto s = batch::dim1_period_gap_scan(-3.0, 3.0, 0.05, batch::Exec::serial);
    auto p = batch::dim1_period_gap_scan(-3.0, 3.0, 0.05, batch::Exec::parallel);
    CHECK(s.min_gap == p.min_gap);
    CHECK(s.valid == p.valid);
    CHECK(s.arg_r1 == p.arg_r1);
    CHECK(s.arg_r2 == p.arg_r2);
  }
  SUBCASE("no tau_1 = tau_2 solutions on the coarse grid") {
    auto s = batch::dim1_period_gap_scan(-5.0, 5.0, 0.1);
    CHECK(s.valid > 0);
    CHECK(s.min_gap > 0.0);
  }
  SUBCASE("the closed-form gap never vanishes: tau_1 - tau_2 = pi/((2r1+r2)(r1+2r2))") {
    auto s = batch::dim1_period_gap_scan(-2.0, 2.0, 0.02);
    double r1 = s.arg_r1, r2 = s.arg_r2;
    double gap = M_PI / ((2 * r1 + r2) * (r1 + 2 * r2));
    CHECK(gap > 0.0);
  }
}

TEST_CASE("grid sampling kernels") {
  RealPolynomial pD = RealPolynomial::from_real_roots({1.0, 0.0, -1.0});
  auto cells = classify_cells(pD);
  std::vector<Vec> grid;
  for (double u = -1.2; u <= 0.2; u += 0.04) {
    Vec v(1);
    v << u;
    grid.push_back(v);
  }
  auto s = batch::sample_cell_metric(cells[0], grid, batch::Exec::serial);
  auto p = batch::sample_cell_metric(cells[0], grid, batch::Exec::parallel);
  REQUIRE(s.size() == p.size());
  CHECK(s.size() < grid.size());  // non-interior nodes filtered
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].u(0) == p[i].u(0));
    CHECK(s[i].R(0, 0) == p[i].R(0, 0));
    CHECK(s[i].R(0, 0) > 0.0);
  }

  MetricField f = flat_metric(2);
  std::vector<CVec> pts{CVec::Zero(2), testing::random_cvec(2)};
  auto ms = batch::sample_metric(f, pts, batch::Exec::serial);
  auto mp = batch::sample_metric(f, pts, batch::Exec::parallel);
  CHECK(ms.size() == mp.size());
  CHECK((ms[0].G - mp[0].G).cwiseAbs().maxCoeff() == 0.0);
}
