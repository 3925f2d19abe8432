#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "ampdens/design.hpp"

namespace ampdens {

/// State of the coordinate solver for
///
///   alpha_k * sum_j D_kj alpha_j = 1,   k = 1..m.
///
/// Each update picks the equation with the largest |E_k| and zeroes it by
/// taking the positive root of its scalar quadratic in alpha_k.
struct AlphaState {
  Eigen::VectorXd alpha;
  Eigen::VectorXd residuals;  // E_i = alpha_i (D alpha)_i - 1
  double total_error = 0.0;   // E = sum |E_i|
  std::size_t updates = 0;
  std::vector<double> trace;  // E before the first update and after every update
  double min_alpha = 0.0;     // smallest alpha_k ever held
};

struct Residuals {
  Eigen::VectorXd per_equation;
  double total = 0.0;
};

/// alpha_k = sqrt(1 / (dbar * m)) for every k.
AlphaState init_alpha(const GramMatrix& gram);

Residuals residuals(const GramMatrix& gram, const Eigen::VectorXd& alpha);

/// Positive root of dkk * a^2 + s * a - 1 = 0, in the cancellation-free form
/// 2 / (s + sqrt(s^2 + 4 dkk)).
double positive_root(double s, double dkk);

/// New alpha_k that zeroes E_k with every other alpha held fixed.
double coordinate_update(const GramMatrix& gram, const Eigen::VectorXd& alpha, std::size_t k);

struct InnerOptions {
  double delta = 0.0;           // 0 selects 1e-10 * m
  std::size_t max_updates = 0;  // 0 selects 200 * m^2
  bool keep_trace = true;
};

double default_delta(std::size_t m);
std::size_t default_max_updates(std::size_t m);

/// Runs updates from init_alpha until E <= delta. Throws ConvergenceError
/// (carrying the E trace) when the cap is hit or E stops decreasing.
AlphaState solve(const GramMatrix& gram, const InnerOptions& options = {});
AlphaState solve(const GramMatrix& gram, double delta, std::size_t max_updates);

/// Same iteration from an arbitrary positive starting point.
AlphaState solve_from(const GramMatrix& gram, Eigen::VectorXd alpha0, const InnerOptions& options = {});

/// u = (r/m) sum_j alpha_j b_j.
///
/// Since (D alpha)_k = u . b_k, the identity u.u = r + (r/m) sum_k E_k holds;
/// a deviation |u.u - r| above tolerance * r means alpha was not a solution
/// and raises ConvergenceError.
Eigen::VectorXd recover_u(const DesignMatrix& design, const Eigen::VectorXd& alpha, double r,
                          double tolerance = 1e-6);

}  // namespace ampdens
