#include <cmath>

#include "bk/cell_metric.hpp"
#include "bk/explicit_metrics.hpp"

namespace bk {

QuadraticFormEval LeafChart::metric_uu(const Vec& u) const {
  return R_D_sym(cell.p_D, u, cell);
}

QuadraticFormEval LeafChart::metric_thth(const Vec& u) const {
  QuadraticFormEval R = R_D_sym(cell.p_D, u, cell);
  QuadraticFormEval out;
  out.point = u;
  out.matrix = R.matrix.inverse();
  out.matrix = ((out.matrix + out.matrix.transpose()) / 2.0).eval();
  return out;
}

Vec LeafChart::u_from_gradient(const Vec& x, const Vec& u_guess) const {
  Vec u = u_guess;
  const int max_iter = 200;
  double fx = (potential_G_gradient(cell.p_D, u) - x).norm();
  for (int it = 0; it < max_iter; ++it) {
    Vec g = potential_G_gradient(cell.p_D, u) - x;
    if (g.norm() < 1e-12 * (1.0 + x.norm())) return u;
    Mat H = R_D_sym(cell.p_D, u, cell).matrix;  // Hessian of G, positive definite
    Vec step = H.ldlt().solve(g);
    // damped backtracking staying in the cell interior
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = u - lambda * step;
      if (cell_membership(cell, cand) == Membership::interior) {
        double fc = (potential_G_gradient(cell.p_D, cand) - x).norm();
        if (fc < fx) {
          u = cand;
          fx = fc;
          moved = true;
          break;
        }
      }
      lambda /= 2.0;
    }
    if (!moved)
      throw error("chart-domain", "leaf chart: Newton failed to reach the gradient value");
  }
  throw error("chart-domain", "leaf chart: Newton did not converge");
}

MetricField LeafChart::field() const {
  MetricField f;
  f.q = cell.m;
  f.name = "leaf(" + cell.tag() + ")";
  LeafChart chart = *this;
  f.eval = [chart](const CVec& z) {
    int m = static_cast<int>(z.size());
    Vec x(m), th(m);
    for (int i = 0; i < m; ++i) {
      x(i) = z(i).real();
      th(i) = z(i).imag();
    }
    Vec u = chart.u_from_gradient(x, chart.u_seed);
    Mat Rinv = chart.metric_thth(u).matrix;  // inverse Hessian = metric coefficients
    CMat G(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) G(i, j) = Rinv(i, j);
    return G;
  };
  LeafChart chart2 = *this;
  f.margin = [chart2](const CVec& z) {
    int m = static_cast<int>(z.size());
    Vec x(m);
    for (int i = 0; i < m; ++i) x(i) = z(i).real();
    Vec u;
    try {
      u = chart2.u_from_gradient(x, chart2.u_seed);
    } catch (const error&) {
      return 0.0;
    }
    // an x-ball of radius d*lambda_min(R_D) stays in the gradient image of the
    // u-ball of radius d; bound d by the distance to the nearest face
    double d = std::numeric_limits<double>::infinity();
    for (const FaceFunctional& face : chart2.cell.faces) {
      double gn = face.coeffs.tail(m).norm();
      if (gn > 0.0) d = std::min(d, std::abs(face(u)) / gn);
    }
    Mat H = R_D_sym(chart2.cell.p_D, u, chart2.cell).matrix;
    Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    return 0.5 * d * es.eigenvalues().minCoeff();
  };
  return f;
}

LeafChart leaf_metric(const MomentumCell& cell, const Vec& u_interior) {
  if (cell_membership(cell, u_interior) != Membership::interior)
    throw domain_error("leaf_metric: u must be interior to the cell");
  if (cell.case_number != 4 && cell.case_number != 1)
    throw parameter_error("leaf_metric: potential chart available on Case-1/Case-4 cells");
  LeafChart chart;
  chart.cell = cell;
  chart.u_seed = u_interior;
  return chart;
}

}  // namespace bk
