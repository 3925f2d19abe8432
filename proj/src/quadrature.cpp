#include "ampdens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ampdens/errors.hpp"

namespace ampdens {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tolerance, std::span<const double> breakpoints) {
  using boost::math::quadrature::gauss_kronrod;

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  QuadratureResult result;
  double l1_total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    if (cuts[s + 1] <= cuts[s]) continue;
    double error = 0.0;
    double l1 = 0.0;
    result.value += gauss_kronrod<double, 61>::integrate(f, cuts[s], cuts[s + 1], 30, tolerance,
                                                         &error, &l1);
    result.error_estimate += error;
    l1_total += l1;
  }
  if (!(result.error_estimate <= tolerance * std::max(1.0, l1_total))) {
    std::ostringstream msg;
    msg << "quadrature did not converge: error estimate " << result.error_estimate;
    throw ConvergenceError(msg.str(), result.error_estimate, {});
  }
  return result;
}

}  // namespace ampdens
