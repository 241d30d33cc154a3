#include "bk/quadrature.hpp"

#include <cmath>

namespace bk {

namespace {
// Gauss-Legendre nodes/weights, 16 points on [-1, 1]
const double kNodes[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                          0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                          0.9445750230732326, 0.9894009349916499};
const double kWeights[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};
}  // namespace

double gauss16(const std::function<double(double)>& f, double a, double b) {
  double c = (a + b) / 2.0, h = (b - a) / 2.0;
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += kWeights[i] * (f(c - h * kNodes[i]) + f(c + h * kNodes[i]));
  return acc * h;
}

namespace {
double adaptive_impl(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
  double c = (a + b) / 2.0;
  double left = gauss16(f, a, c), right = gauss16(f, c, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol * (1.0 + std::abs(left + right)))
    return left + right;
  return adaptive_impl(f, a, c, left, tol / 1.4, depth - 1) +
         adaptive_impl(f, c, b, right, tol / 1.4, depth - 1);
}
}  // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_depth) {
  if (a == b) return 0.0;
  return adaptive_impl(f, a, b, gauss16(f, a, b), tol, max_depth);
}

double panels_toward(const std::function<double(double)>& f, double a, double b, double min_gap,
                     double tol) {
  if (a == b) return 0.0;
  double span = b - a;
  double acc = 0.0;
  double lo = a;
  double gap = span / 2.0;
  while (std::abs(gap) > min_gap) {
    double hi = b - gap;
    acc += adaptive_gauss(f, lo, hi, tol, 24);
    lo = hi;
    gap /= 2.0;
  }
  acc += adaptive_gauss(f, lo, b - gap, tol, 24);
  return acc;
}

}  // namespace bk
