#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bk/batch.hpp"
#include "bk/classification.hpp"
#include "bk/curvature.hpp"
#include "bk/geodesic.hpp"

namespace bk {
namespace io {

using json = nlohmann::json;

json point_to_json(const StructurePoint& p);
StructurePoint point_from_json(const json& j, const Tolerances& tol = {});

json polynomial_to_json(const RealPolynomial& p);
RealPolynomial polynomial_from_json(const json& j);

json cell_to_json(const MomentumCell& cell);
json verdict_to_json(const CaseVerdict& v);
json curvature_report_to_json(const CurvatureReport& rep);

/// CSV of a structure path: s, eigenvalues of H, |T|^2, V, C_2..C_{n+2}.
std::string path_to_csv(const StructurePath& path);

/// CSV of metric samples: z re/im components, then G entries re/im.
std::string metric_samples_to_csv(const std::vector<batch::MetricSample>& samples);

/// CSV of cell-metric samples: u, R_D entries, eigenvalues.
std::string cell_metric_to_csv(const std::vector<batch::CellMetricSample>& samples);

/// CSV of the m = 2 cell layout: face-line coefficients and polygon vertices.
std::string cell_plot_csv(const std::vector<MomentumCell>& cells);

/// SVG drawing of the m = 2 momentum cells: regions bounded by l_a = 0 lines,
/// clipped to an auto-fit viewport (20% margin), case tags annotated, clip
/// edges dashed.
std::string cell_plot_svg(const std::vector<MomentumCell>& cells);

}  // namespace io
}  // namespace bk
