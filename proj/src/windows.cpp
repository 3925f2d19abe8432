#include "ampdens/windows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ampdens/quadrature.hpp"

namespace ampdens {

namespace {

constexpr double kNormalizerTolerance = 1e-8;

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << "window argument " << t << " outside [0,1]";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

WindowBasis::WindowBasis(int degree)
    : degree_(degree), normalizer_(degree + 1.0), log_space_(degree > kLogSpaceDegree) {
  if (degree < 0) throw std::invalid_argument("window degree must be nonnegative");

  const auto n = static_cast<std::size_t>(degree);
  binom_.resize(n + 1);
  if (!log_space_) {
    // C(n,i+1) = C(n,i) (n-i)/(i+1); exact in double up to n = 30.
    binom_[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      binom_[i + 1] = binom_[i] * static_cast<double>(n - i) / static_cast<double>(i + 1);
  } else {
    const double lg_n = std::lgamma(n + 1.0);
    for (std::size_t i = 0; i <= n; ++i)
      binom_[i] = lg_n - std::lgamma(i + 1.0) - std::lgamma(static_cast<double>(n - i) + 1.0);
  }

  // The closed-form N_i = n+1 must agree with quadrature.
  for (std::size_t i = 0; i <= n; ++i) {
    const auto q = integrate_adaptive([&](double t) { return value_unchecked(i, t); }, 0.0, 1.0,
                                      1e-12);
    if (std::abs(q.value - 1.0) > kNormalizerTolerance) {
      std::ostringstream msg;
      msg << "window " << i << " of degree " << degree << " integrates to " << q.value;
      throw std::logic_error(msg.str());
    }
  }
}

double WindowBasis::normalizer(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("window index out of range");
  return normalizer_;
}

double WindowBasis::value_unchecked(std::size_t i, double t) const {
  const auto n = static_cast<std::size_t>(degree_);
  const std::size_t j = n - i;
  if (!log_space_) {
    return normalizer_ * binom_[i] * std::pow(t, static_cast<double>(i)) *
           std::pow(1.0 - t, static_cast<double>(j));
  }
  if ((t == 0.0 && i > 0) || (t == 1.0 && j > 0)) return 0.0;
  double log_value = binom_[i];
  if (i > 0) log_value += static_cast<double>(i) * std::log(t);
  if (j > 0) log_value += static_cast<double>(j) * std::log1p(-t);
  return normalizer_ * std::exp(log_value);
}

double WindowBasis::operator()(std::size_t i, double t) const {
  if (i >= size()) throw std::out_of_range("window index out of range");
  check_t(t);
  return value_unchecked(i, t);
}

Eigen::VectorXd WindowBasis::eval_all(double t) const {
  check_t(t);
  Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) out(static_cast<Eigen::Index>(i)) = value_unchecked(i, t);
  return out;
}

double bernstein_window(const WindowBasis& basis, std::size_t i, double t) { return basis(i, t); }

Eigen::VectorXd eval_all(const WindowBasis& basis, double t) { return basis.eval_all(t); }

DomainMap::DomainMap(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw std::invalid_argument("domain requires finite a < b");
}

double DomainMap::to_unit(double x) const {
  if (!contains(x)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "observation " << x << " outside [" << a_ << ", " << b_ << "]";
    throw std::out_of_range(msg.str());
  }
  if (x == b_) return 1.0;
  return std::clamp((x - a_) / (b_ - a_), 0.0, 1.0);
}

double DomainMap::density_back(double g) const {
  if (!(g >= 0.0)) throw std::invalid_argument("density value must be nonnegative");
  return g / (b_ - a_);
}

DomainMap DomainMap::around(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("cannot derive a domain from no observations");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (!std::isfinite(*lo) || !std::isfinite(*hi))
    throw std::invalid_argument("observations must be finite");
  const double range = *hi - *lo;
  if (range == 0.0) return DomainMap(*lo - 0.5, *hi + 0.5);
  const double eta = 1e-9 * range;
  return DomainMap(*lo - eta, *hi + eta);
}

}  // namespace ampdens
