#include "bk/batch.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bk {
namespace batch {

std::vector<CurvatureReport> curvature_reports(const MetricField& field,
                                               const std::vector<CVec>& points, double step,
                                               Exec exec) {
  const CalibrationRecord& cal = calibration();  // materialize before the loop
  int n = static_cast<int>(points.size());
  std::vector<CurvatureReport> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (int i = 0; i < n; ++i) out[i] = curvature_report(field, points[i], step, cal);
  return out;
}

namespace {

// tau_1, tau_2 for the root pair (r1, r2); false if the triple
// r0 = -(r1+r2) > r1 > r2 is not a valid Case-4 configuration
bool periods_at(double r1, double r2, double& tau1, double& tau2) {
  double r0 = -(r1 + r2);
  if (!(r0 > r1 && r1 > r2)) return false;
  double C2 = r0 * r1 + r0 * r2 + r1 * r2;
  double d1 = 3.0 * r1 * r1 + C2;  // p'(r_1) < 0 on valid triples
  double d2 = 3.0 * r2 * r2 + C2;  // p'(r_2) > 0
  if (!(d1 < 0.0 && d2 > 0.0)) return false;
  tau1 = -M_PI / d1;
  tau2 = M_PI / d2;
  return true;
}

}  // namespace

PeriodScan dim1_period_gap_scan(double lo, double hi, double resolution, Exec exec) {
  long long steps = static_cast<long long>(std::floor((hi - lo) / resolution)) + 1;
  PeriodScan best;
  best.min_gap = std::numeric_limits<double>::infinity();

#ifdef _OPENMP
#pragma omp parallel if (exec == Exec::parallel)
#endif
  {
    PeriodScan local;
    local.min_gap = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long long i = 0; i < steps; ++i) {
      double r1 = lo + i * resolution;
      for (long long j = 0; j < steps; ++j) {
        double r2 = lo + j * resolution;
        if (!(r1 > r2)) continue;
        double tau1, tau2;
        if (!periods_at(r1, r2, tau1, tau2)) continue;
        ++local.valid;
        double gap = std::abs(tau1 - tau2) / std::max(tau1, tau2);
        if (gap < local.min_gap) {
          local.min_gap = gap;
          local.arg_r1 = r1;
          local.arg_r2 = r2;
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      best.valid += local.valid;
      if (local.min_gap < best.min_gap) {
        best.min_gap = local.min_gap;
        best.arg_r1 = local.arg_r1;
        best.arg_r2 = local.arg_r2;
      }
    }
  }
  return best;
}

std::vector<CellMetricSample> sample_cell_metric(const MomentumCell& cell,
                                                 const std::vector<Vec>& grid, Exec exec) {
  int n = static_cast<int>(grid.size());
  std::vector<CellMetricSample> out;
  std::vector<char> keep(n, 0);
  std::vector<CellMetricSample> tmp(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (int i = 0; i < n; ++i) {
    if (cell_membership(cell, grid[i]) != Membership::interior) continue;
    CellMetricSample s;
    s.u = grid[i];
    s.R = R_D_sym(cell.p_D, grid[i], cell).matrix;
    Eigen::SelfAdjointEigenSolver<Mat> es(s.R, Eigen::EigenvaluesOnly);
    s.eigs = es.eigenvalues();
    tmp[i] = std::move(s);
    keep[i] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (keep[i]) out.push_back(std::move(tmp[i]));
  return out;
}

std::vector<MetricSample> sample_metric(const MetricField& field, const std::vector<CVec>& points,
                                        Exec exec) {
  int n = static_cast<int>(points.size());
  std::vector<MetricSample> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (int i = 0; i < n; ++i) out[i] = {points[i], field.eval(points[i])};
  return out;
}

}  // namespace batch
}  // namespace bk
