#pragma once

#include <functional>
#include <span>

namespace ampdens {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (61-point) quadrature of f over [a,b], split at
/// the given interior breakpoints. Throws ConvergenceError when the error
/// estimate stays above tolerance * max(1, integral of |f|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tolerance, std::span<const double> breakpoints = {});

}  // namespace ampdens
