#include "ampdens/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ampdens/errors.hpp"
#include "ampdens/synthetic.hpp"

namespace ampdens::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::VectorXd to_sphere(Eigen::VectorXd a, double r) {
  a = a.cwiseAbs();
  return a * (std::sqrt(r) / a.norm());
}

Eigen::VectorXd random_start(Rng& rng, Eigen::Index d, double r) {
  Eigen::VectorXd a(d);
  for (Eigen::Index i = 0; i < d; ++i) a(i) = 1.0 - rng.uniform();  // (0,1]
  return to_sphere(std::move(a), r);
}

}  // namespace

double amplitude_loglik(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes) {
  const Eigen::RowVectorXd l = amplitudes.cwiseAbs2().transpose() * windows;
  double total = 0.0;
  for (Eigen::Index j = 0; j < l.size(); ++j) {
    if (!(l(j) > 0.0)) return kNegInf;
    total += std::log(l(j));
  }
  return total;
}

Eigen::VectorXd amplitude_gradient(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes) {
  const Eigen::RowVectorXd l = amplitudes.cwiseAbs2().transpose() * windows;
  const Eigen::VectorXd s = windows * l.cwiseInverse().transpose();
  return 2.0 * amplitudes.cwiseProduct(s);
}

Eigen::VectorXd finite_difference_gradient(const Eigen::MatrixXd& windows,
                                           const Eigen::VectorXd& amplitudes, double h) {
  Eigen::VectorXd g(amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    Eigen::VectorXd plus = amplitudes;
    Eigen::VectorXd minus = amplitudes;
    plus(i) += h;
    minus(i) -= h;
    g(i) = (amplitude_loglik(windows, plus) - amplitude_loglik(windows, minus)) / (2.0 * h);
  }
  return g;
}

double gradient_relative_error(const Eigen::MatrixXd& windows, const Eigen::VectorXd& amplitudes) {
  const Eigen::VectorXd g = amplitude_gradient(windows, amplitudes);
  const Eigen::VectorXd fd = finite_difference_gradient(windows, amplitudes);
  const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  return (g - fd).cwiseAbs().maxCoeff() / scale;
}

OracleResult grid_search(const Eigen::MatrixXd& windows, double r, std::size_t resolution) {
  const auto d = static_cast<std::size_t>(windows.rows());
  if (d == 0) throw std::invalid_argument("grid search needs at least one window");
  if (d > kMaxGridWindows) {
    std::ostringstream msg;
    msg << "grid search refuses " << d << " windows: cost grows as resolution^(windows-1), limit is "
        << kMaxGridWindows;
    throw std::invalid_argument(msg.str());
  }
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius r must be positive");

  OracleResult best;
  best.method = Method::grid;
  best.best_loglik = kNegInf;
  const double radius = std::sqrt(r);

  const std::size_t angles = d - 1;
  std::vector<std::size_t> idx(angles, 0);
  Eigen::VectorXd a(static_cast<Eigen::Index>(d));
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(resolution - 1);
  while (true) {
    // Hyperspherical coordinates restricted to the nonnegative orthant.
    double tail = radius;
    for (std::size_t q = 0; q < angles; ++q) {
      const double theta = step * static_cast<double>(idx[q]);
      const double c = idx[q] + 1 == resolution ? 0.0 : std::cos(theta);
      const double s = idx[q] == 0 ? 0.0 : std::sin(theta);
      a(static_cast<Eigen::Index>(q)) = tail * c;
      tail *= s;
    }
    a(static_cast<Eigen::Index>(angles)) = tail;

    const double ll = amplitude_loglik(windows, a);
    ++best.evaluations;
    if (ll > best.best_loglik || best.best_coefficients.size() == 0) {
      best.best_loglik = ll;
      best.best_coefficients = a;
    }

    std::size_t q = 0;
    while (q < angles && ++idx[q] == resolution) idx[q++] = 0;
    if (q == angles) break;
  }
  return best;
}

OracleResult projected_gradient(const Eigen::MatrixXd& windows, double r, const GradientOptions& options) {
  const auto m = static_cast<std::size_t>(windows.cols());
  if (m > kMaxGradientSamples) {
    std::ostringstream msg;
    msg << "projected-gradient oracle refuses " << m << " samples, limit is " << kMaxGradientSamples;
    throw std::invalid_argument(msg.str());
  }
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius r must be positive");
  if (options.starts == 0) throw std::invalid_argument("projected gradient needs at least one start");
  for (Eigen::Index j = 0; j < windows.cols(); ++j)
    if (!(windows.col(j).maxCoeff() > 0.0))
      throw InfeasibleError("infeasible: a sample is not covered by any window", static_cast<std::size_t>(j));

  const Eigen::Index d = windows.rows();
  Rng rng(options.seed);
  OracleResult result;
  result.method = Method::projected_gradient;
  result.best_loglik = kNegInf;
  const double natural_step = r / (2.0 * static_cast<double>(m));

  for (std::size_t start = 0; start < options.starts; ++start) {
    Eigen::VectorXd a = random_start(rng, d, r);
    if (start == 0) result.gradient_check_error = gradient_relative_error(windows, a);

    double ll = amplitude_loglik(windows, a);
    ++result.evaluations;
    double eta = natural_step;
    bool done = false;
    for (std::size_t it = 0; it < options.max_steps && !done; ++it) {
      const Eigen::VectorXd g = amplitude_gradient(windows, a);
      const Eigen::VectorXd p = g - (g.dot(a) / r) * a;
      const double pnorm = p.norm();
      if (pnorm <= options.tolerance) {
        done = true;
        break;
      }
      // Backtracking. Once the gain drops below the rounding level of ll the
      // value cannot rank candidates, so a tie is accepted only if it does
      // not grow the projected gradient.
      const double slack =
          64.0 * std::numeric_limits<double>::epsilon() * (std::abs(ll) + static_cast<double>(m));
      bool accepted = false;
      while (eta > 1e-30 * natural_step) {
        Eigen::VectorXd cand = to_sphere(a + eta * p, r);
        const double lc = amplitude_loglik(windows, cand);
        ++result.evaluations;
        bool take = lc > ll + slack;
        if (!take && lc >= ll - slack) {
          const Eigen::VectorXd gc = amplitude_gradient(windows, cand);
          take = (gc - (gc.dot(cand) / r) * cand).norm() <= pnorm;
        }
        if (take) {
          a = std::move(cand);
          ll = lc;
          eta *= 2.0;
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) {
        std::ostringstream msg;
        msg << "projected gradient stalled at |P grad| = " << pnorm << " on start " << start;
        throw ConvergenceError(msg.str(), pnorm, {});
      }
    }
    if (!done) {
      std::ostringstream msg;
      msg << "projected gradient exhausted " << options.max_steps << " steps on start " << start;
      throw ConvergenceError(msg.str(), ll, {});
    }

    result.endpoints.push_back(a);
    if (ll > result.best_loglik) {
      result.best_loglik = ll;
      result.best_coefficients = a;
    }
  }
  return result;
}

}  // namespace ampdens::oracle
