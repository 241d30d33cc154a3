#include "bk/io.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <sstream>

namespace bk {
namespace io {

namespace {

json matrix_part(const CMat& m, bool real) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(real ? m(i, j).real() : m(i, j).imag());
    rows.push_back(row);
  }
  return rows;
}

json vector_part(const CVec& v, bool real) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(real ? v(i).real() : v(i).imag());
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

json point_to_json(const StructurePoint& p) {
  return json{{"n", p.n},
              {"H_re", matrix_part(p.H, true)},
              {"H_im", matrix_part(p.H, false)},
              {"T_re", vector_part(p.T, true)},
              {"T_im", vector_part(p.T, false)},
              {"V", p.V}};
}

StructurePoint point_from_json(const json& j, const Tolerances& tol) {
  int n = j.at("n").get<int>();
  CMat H(n, n);
  CVec T(n);
  const auto& hre = j.at("H_re");
  const auto& him = j.at("H_im");
  const auto& tre = j.at("T_re");
  const auto& tim = j.at("T_im");
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k)
      H(i, k) = Complex(hre.at(i).at(k).get<double>(), him.at(i).at(k).get<double>());
    T(i) = Complex(tre.at(i).get<double>(), tim.at(i).get<double>());
  }
  return StructurePoint(H, T, j.at("V").get<double>(), tol);
}

json polynomial_to_json(const RealPolynomial& p) {
  json desc = json::array();
  for (int k = p.degree(); k >= 0; --k) desc.push_back(p.coeff(k));
  return json{{"degree", p.degree()}, {"coeffs_descending", desc}};
}

RealPolynomial polynomial_from_json(const json& j) {
  std::vector<double> desc = j.at("coeffs_descending").get<std::vector<double>>();
  return RealPolynomial::from_descending(desc);
}

json cell_to_json(const MomentumCell& cell) {
  json bands = json::array();
  for (const auto& b : cell.bands) {
    bands.push_back(json{{"lo", std::isinf(b.lo) ? json(nullptr) : json(b.lo)},
                         {"hi", std::isinf(b.hi) ? json(nullptr) : json(b.hi)},
                         {"lo_closed", b.lo_closed},
                         {"hi_closed", b.hi_closed}});
  }
  json faces = json::array();
  for (const auto& f : cell.faces) {
    std::vector<double> c(f.coeffs.data(), f.coeffs.data() + f.coeffs.size());
    faces.push_back(json{{"root", f.root}, {"coeffs", c}});
  }
  return json{{"tag", cell.tag()},       {"m", cell.m},
              {"roots", cell.roots},     {"multiplicities", cell.mult},
              {"mu", cell.mu},           {"bands", bands},
              {"faces", faces},          {"bounded", cell.bounded}};
}

json verdict_to_json(const CaseVerdict& v) {
  const char* c = v.completeness == Completeness::possibly_complete  ? "possibly_complete"
                  : v.completeness == Completeness::orbifold_only    ? "orbifold_only"
                                                                     : "never_complete";
  return json{{"bounded", v.bounded}, {"completeness", c}, {"notes", v.notes}};
}

json curvature_report_to_json(const CurvatureReport& rep) {
  json R = json::array();
  int q = rep.R.q();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l) {
          Complex c = rep.R.at(i, j, k, l);
          R.push_back(json{{"i", i}, {"j", j}, {"k", k}, {"l", l},
                           {"re", c.real()}, {"im", c.imag()}});
        }
  std::vector<double> h(rep.h_extracted.data(), rep.h_extracted.data() + rep.h_extracted.size());
  return json{{"z_re", vector_part(rep.z, true)},
              {"z_im", vector_part(rep.z, false)},
              {"R", R},
              {"Ricci_re", matrix_part(rep.Ricci, true)},
              {"Ricci_im", matrix_part(rep.Ricci, false)},
              {"scalar", rep.scalar},
              {"S_fit_re", matrix_part(rep.S_fit, true)},
              {"S_fit_im", matrix_part(rep.S_fit, false)},
              {"bochner_residual", rep.bochner_residual},
              {"symmetry_defect", rep.symmetry_defect},
              {"p_h_extracted", polynomial_to_json(rep.p_h_extracted)},
              {"h_extracted", h}};
}

std::string path_to_csv(const StructurePath& path) {
  std::ostringstream os;
  int n = path.points.empty() ? 0 : path.points.front().n;
  os << "s";
  for (int i = 1; i <= n; ++i) os << ",lambda" << i;
  os << ",Tsq,V";
  for (int k = 2; k <= n + 2; ++k) os << ",C" << k;
  os << "\n";
  for (size_t i = 0; i < path.points.size(); ++i) {
    const StructurePoint& p = path.points[i];
    os << fmt(path.s[i]);
    Eigen::SelfAdjointEigenSolver<CMat> es(p.H, Eigen::EigenvaluesOnly);
    for (int j = n - 1; j >= 0; --j) os << "," << fmt(es.eigenvalues()(j));
    os << "," << fmt(p.T.squaredNorm()) << "," << fmt(p.V);
    ConservedVector c = conserved_Ck(p);
    for (int k = 0; k < c.C.size(); ++k) os << "," << fmt(c.C(k));
    os << "\n";
  }
  return os.str();
}

std::string metric_samples_to_csv(const std::vector<batch::MetricSample>& samples) {
  std::ostringstream os;
  if (samples.empty()) return "";
  int q = static_cast<int>(samples.front().z.size());
  for (int i = 1; i <= q; ++i) os << (i > 1 ? "," : "") << "z" << i << "_re,z" << i << "_im";
  for (int i = 1; i <= q; ++i)
    for (int j = 1; j <= q; ++j) os << ",G" << i << j << "_re,G" << i << j << "_im";
  os << "\n";
  for (const auto& s : samples) {
    for (int i = 0; i < q; ++i)
      os << (i > 0 ? "," : "") << fmt(s.z(i).real()) << "," << fmt(s.z(i).imag());
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        os << "," << fmt(s.G(i, j).real()) << "," << fmt(s.G(i, j).imag());
    os << "\n";
  }
  return os.str();
}

std::string cell_metric_to_csv(const std::vector<batch::CellMetricSample>& samples) {
  std::ostringstream os;
  if (samples.empty()) return "";
  int m = static_cast<int>(samples.front().u.size());
  for (int i = 1; i <= m; ++i) os << (i > 1 ? "," : "") << "u" << i;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) os << ",R" << i << j;
  for (int i = 1; i <= m; ++i) os << ",eig" << i;
  os << "\n";
  for (const auto& s : samples) {
    for (int i = 0; i < m; ++i) os << (i > 0 ? "," : "") << fmt(s.u(i));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) os << "," << fmt(s.R(i, j));
    for (int i = 0; i < m; ++i) os << "," << fmt(s.eigs(i));
    os << "\n";
  }
  return os.str();
}

namespace {

struct Pt {
  double x, y;
};

// half-plane c0 + c1 x + c2 y >= 0 clipping (Sutherland-Hodgman)
std::vector<Pt> clip_halfplane(const std::vector<Pt>& poly, double c0, double c1, double c2) {
  std::vector<Pt> out;
  int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    Pt a = poly[i], b = poly[(i + 1) % n];
    double fa = c0 + c1 * a.x + c2 * a.y;
    double fb = c0 + c1 * b.x + c2 * b.y;
    if (fa >= 0.0) out.push_back(a);
    if ((fa >= 0.0) != (fb >= 0.0)) {
      double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

// half-plane coefficients of a cell: (-1)^mu (r^2 - r u1 + u2) >= 0 for m = 2
std::vector<std::array<double, 3>> cell_halfplanes(const MomentumCell& cell) {
  std::vector<std::array<double, 3>> hp;
  for (size_t i = 0; i < cell.roots.size(); ++i) {
    double r = cell.roots[i];
    double sgn = (cell.mu[i] % 2) ? -1.0 : 1.0;
    hp.push_back({sgn * r * r, -sgn * r, sgn});
  }
  return hp;
}

std::array<double, 4> viewport(const std::vector<MomentumCell>& cells) {
  // fit around the root data with 20% margin
  double rmax = 1.0;
  for (const auto& c : cells)
    for (double r : c.roots) rmax = std::max(rmax, std::abs(r));
  double ext = 1.2 * (2.0 * rmax * rmax + 2.0 * rmax);
  return {-ext, ext, -ext, ext};
}

std::vector<Pt> cell_polygon(const MomentumCell& cell, const std::array<double, 4>& box) {
  std::vector<Pt> poly{{box[0], box[2]}, {box[1], box[2]}, {box[1], box[3]}, {box[0], box[3]}};
  for (const auto& h : cell_halfplanes(cell)) {
    poly = clip_halfplane(poly, h[0], h[1], h[2]);
    if (poly.empty()) break;
  }
  return poly;
}

}  // namespace

std::string cell_plot_csv(const std::vector<MomentumCell>& cells) {
  std::ostringstream os;
  os << "kind,tag,root,c0,c1,c2,x,y\n";
  auto box = viewport(cells);
  for (const auto& cell : cells) {
    if (cell.m != 2) throw parameter_error("cell_plot_csv: plots are 2-dimensional");
    const auto hp = cell_halfplanes(cell);
    for (size_t i = 0; i < hp.size(); ++i)
      os << "face," << cell.tag() << "," << fmt(cell.roots[i]) << "," << fmt(hp[i][0]) << ","
         << fmt(hp[i][1]) << "," << fmt(hp[i][2]) << ",,\n";
    for (const Pt& p : cell_polygon(cell, box))
      os << "vertex," << cell.tag() << ",,,,," << fmt(p.x) << "," << fmt(p.y) << "\n";
  }
  return os.str();
}

std::string cell_plot_svg(const std::vector<MomentumCell>& cells) {
  for (const auto& cell : cells)
    if (cell.m != 2) throw parameter_error("cell_plot_svg: plots are 2-dimensional");
  auto box = viewport(cells);
  double w = 640.0, h = 640.0;
  auto X = [&](double x) { return (x - box[0]) / (box[1] - box[0]) * w; };
  auto Y = [&](double y) { return h - (y - box[2]) / (box[3] - box[2]) * h; };
  const char* fills[] = {"#4e79a766", "#f28e2b66", "#59a14f66", "#e1575966"};

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  os << "<rect x='0' y='0' width='" << w << "' height='" << h
     << "' fill='white' stroke='black' stroke-dasharray='6,4'/>\n";
  int idx = 0;
  for (const auto& cell : cells) {
    std::vector<Pt> poly = cell_polygon(cell, box);
    if (poly.empty()) continue;
    os << "<polygon points='";
    for (const Pt& p : poly) os << X(p.x) << "," << Y(p.y) << " ";
    os << "' fill='" << fills[idx % 4] << "' stroke='none'/>\n";
    double cx = 0, cy = 0;
    for (const Pt& p : poly) {
      cx += p.x;
      cy += p.y;
    }
    cx /= poly.size();
    cy /= poly.size();
    os << "<text x='" << X(cx) << "' y='" << Y(cy) << "' font-size='14' text-anchor='middle'>"
       << cell.tag() << "</text>\n";
    ++idx;
  }
  // face lines across the viewport: u2 = r u1 - r^2
  if (!cells.empty()) {
    for (size_t i = 0; i < cells.front().roots.size(); ++i) {
      double r = cells.front().roots[i];
      double y0 = r * box[0] - r * r, y1 = r * box[1] - r * r;
      os << "<line x1='" << X(box[0]) << "' y1='" << Y(y0) << "' x2='" << X(box[1]) << "' y2='"
         << Y(y1) << "' stroke='black' stroke-width='1'/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace io
}  // namespace bk
