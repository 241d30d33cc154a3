#pragma once

#include <functional>

namespace bk {

/// 16-point Gauss-Legendre on [a, b].
double gauss16(const std::function<double(double)>& f, double a, double b);

/// Adaptive bisection on top of gauss16; integrand must be finite on [a, b].
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12, int max_depth = 48);

/// Integral over [a, b) with an integrable singularity at b: dyadic panels
/// shrinking toward b, stopped at gap min_gap.
double panels_toward(const std::function<double(double)>& f, double a, double b,
                     double min_gap, double tol = 1e-12);

}  // namespace bk
