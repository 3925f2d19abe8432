#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace ampdens::oracle {

// Reference maximizers of
//
//   L(a) = sum_j ln( sum_i a_i^2 A_ij ),   |a|^2 = r,  a >= 0,
//
// where A is an (n+1) x m window-value matrix. They share nothing with the
// quadratic-system solver and serve as independent cross-checks on tiny
// instances.

enum class Method { grid, projected_gradient };

struct OracleResult {
  Eigen::VectorXd best_coefficients;  // amplitudes a on the radius-sqrt(r) sphere
  double best_loglik = 0.0;
  std::size_t evaluations = 0;
  Method method = Method::grid;
  std::vector<Eigen::VectorXd> endpoints;  // projected_gradient: one per start
  double gradient_check_error = 0.0;       // projected_gradient: FD check at the first start
};

/// -inf if some sample gets zero density.
double amplitude_loglik(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes);
Eigen::VectorXd amplitude_gradient(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes);
/// Central differences with step h in every coordinate.
Eigen::VectorXd finite_difference_gradient(const Eigen::MatrixXd& windows,
                                           const Eigen::VectorXd& amplitudes, double h = 1e-6);
/// max_i |g_i - fd_i| / max(|g|_inf, 1e-300).
double gradient_relative_error(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes);

inline constexpr std::size_t kMaxGridWindows = 4;
inline constexpr std::size_t kMaxGradientSamples = 200;

/// Exhaustive scan of the spherical angles in the nonnegative orthant,
/// `resolution` points per angle, endpoints included. Refuses n+1 > 4.
OracleResult grid_search(const Eigen::MatrixXd& windows, double r, std::size_t resolution);

struct GradientOptions {
  std::size_t starts = 20;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;  // on the norm of the projected gradient
  std::size_t max_steps = 200000;
};

/// Multi-start projected gradient ascent with backtracking, renormalizing to
/// the sphere after every step. Refuses m > 200; throws ConvergenceError if
/// a start exhausts its step budget.
OracleResult projected_gradient(const Eigen::MatrixXd& windows, double r,
                                const GradientOptions& options = {});

}  // namespace ampdens::oracle
