#pragma once

#include <vector>

#include "bk/cell_metric.hpp"
#include "bk/classification.hpp"
#include "bk/curvature.hpp"
#include "bk/metric_field.hpp"

namespace bk {
namespace batch {

enum class Exec { serial, parallel };

/// Per-point curvature reports; points are independent, order preserved.
std::vector<CurvatureReport> curvature_reports(const MetricField& field,
                                               const std::vector<CVec>& points, double step,
                                               Exec exec = Exec::parallel);

struct PeriodScan {
  double min_gap = 0.0;     // min over the grid of |tau_1 - tau_2| / max(tau)
  double arg_r1 = 0.0, arg_r2 = 0.0;
  long long valid = 0;      // grid points with a valid Case-4 root triple
};

/// Scan (r_1, r_2) in [lo, hi]^2 with r_1 > r_2 at the given resolution for
/// solutions of tau_1 = tau_2 (dimension-1 Case 4 periods).
PeriodScan dim1_period_gap_scan(double lo, double hi, double resolution,
                                Exec exec = Exec::parallel);

struct CellMetricSample {
  Vec u;
  Mat R;      // R_D coefficients
  Vec eigs;   // ascending eigenvalues
};

/// R_D over a grid of interior points (filters non-interior grid nodes).
std::vector<CellMetricSample> sample_cell_metric(const MomentumCell& cell,
                                                 const std::vector<Vec>& grid,
                                                 Exec exec = Exec::parallel);

struct MetricSample {
  CVec z;
  CMat G;
};

std::vector<MetricSample> sample_metric(const MetricField& field, const std::vector<CVec>& points,
                                        Exec exec = Exec::parallel);

}  // namespace batch
}  // namespace bk
