#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ampdens {

/// Degree-n Bernstein windows on [0,1], each scaled to unit integral:
///
///   phi_i(t) = N_i * C(n,i) * t^i * (1-t)^(n-i),   i = 0..n
///
/// The Beta integral gives N_i = n+1 for every i, so the windows sum to n+1
/// everywhere on [0,1]. The closed form is cross-checked by quadrature when
/// the basis is constructed.
class WindowBasis {
public:
  explicit WindowBasis(int degree);

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(degree_) + 1; }
  double normalizer(std::size_t i) const;

  /// phi_i(t). Throws std::out_of_range for a bad index or t outside [0,1].
  double operator()(std::size_t i, double t) const;

  /// All n+1 window values at t.
  Eigen::VectorXd eval_all(double t) const;

  /// Above this degree binomials are carried in log space.
  static constexpr int kLogSpaceDegree = 30;

private:
  double value_unchecked(std::size_t i, double t) const;

  int degree_;
  double normalizer_;
  bool log_space_;
  std::vector<double> binom_;  // C(n,i), or log C(n,i) when log_space_
};

double bernstein_window(const WindowBasis& basis, std::size_t i, double t);
Eigen::VectorXd eval_all(const WindowBasis& basis, double t);

/// Affine map between the data interval [a,b] and [0,1].
class DomainMap {
public:
  DomainMap(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  /// (x-a)/(b-a). Observations outside [a,b] are rejected, never clamped.
  double to_unit(double x) const;
  double from_unit(double t) const noexcept { return t == 1.0 ? b_ : a_ + t * (b_ - a_); }

  /// Jacobian of the change of variables: g/(b-a).
  double density_back(double g) const;

  /// [min - eta, max + eta] with eta = 1e-9 * (max - min). A degenerate
  /// sample (all values equal) gets the unit-width interval centred on it.
  static DomainMap around(std::span<const double> xs);

private:
  double a_;
  double b_;
};

inline double to_unit(const DomainMap& map, double x) { return map.to_unit(x); }
inline double density_back(const DomainMap& map, double g) { return map.density_back(g); }

}  // namespace ampdens
