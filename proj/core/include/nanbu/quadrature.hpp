#pragma once

#include <functional>

namespace nanbu::quad {

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-14;
  int max_depth = 48;
};

/// Adaptive Simpson on [a, b]. Accepts a panel once its Richardson error
/// estimate falls below max(relative * |whole-interval estimate|, absolute).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        Tolerance tol = {});

/// Integral over [a, inf) via z = a + scale * t / (1 - t), t in [0, 1).
/// The integrand must decay faster than 1/z.
double semi_infinite(const std::function<double(double)>& f, double a, double scale,
                     Tolerance tol = {});

/// Trapezoid rule for a 2*pi periodic function; exact for trigonometric
/// polynomials of degree < points.
double periodic_trapezoid(const std::function<double(double)>& f, int points);

}  // namespace nanbu::quad
