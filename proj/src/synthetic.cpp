#include "ampdens/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ampdens {

ExampleDensity parse_density(std::string_view id) {
  if (id == "exp") return ExampleDensity::exp;
  if (id == "bimodal") return ExampleDensity::bimodal;
  if (id == "trimodal") return ExampleDensity::trimodal;
  throw std::invalid_argument("unknown density id '" + std::string(id) +
                              "' (expected exp, bimodal or trimodal)");
}

std::string_view density_name(ExampleDensity d) {
  switch (d) {
    case ExampleDensity::exp: return "exp";
    case ExampleDensity::bimodal: return "bimodal";
    case ExampleDensity::trimodal: return "trimodal";
  }
  return "?";
}

double true_pdf(ExampleDensity d, double x) {
  switch (d) {
    case ExampleDensity::exp:
      return x >= 0.0 ? std::exp(-x) : 0.0;
    case ExampleDensity::bimodal:
      if (x >= 1.0 && x <= 2.0) return 2.0 / 3.0;
      if (x >= 3.0 && x <= 4.0) return 1.0 / 3.0;
      return 0.0;
    case ExampleDensity::trimodal:
      if (x >= 0.0 && x <= 0.5) return 1.0;
      if (x >= 1.0 && x <= 1.5) return 0.5;
      if (x >= 3.0 && x <= 3.5) return 0.5;
      return 0.0;
  }
  return 0.0;
}

Support support(ExampleDensity d) {
  switch (d) {
    case ExampleDensity::exp: return {0.0, 40.0};
    case ExampleDensity::bimodal: return {1.0, 4.0};
    case ExampleDensity::trimodal: return {0.0, 3.5};
  }
  return {0.0, 0.0};
}

std::vector<double> breakpoints(ExampleDensity d) {
  switch (d) {
    case ExampleDensity::exp: return {0.0};
    case ExampleDensity::bimodal: return {1.0, 2.0, 3.0, 4.0};
    case ExampleDensity::trimodal: return {0.0, 0.5, 1.0, 1.5, 3.0, 3.5};
  }
  return {};
}

double inverse_cdf(ExampleDensity d, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw std::out_of_range("inverse_cdf needs u in [0,1)");
  switch (d) {
    case ExampleDensity::exp:
      return -std::log1p(-u);
    case ExampleDensity::bimodal:
      // Mass 2/3 on [1,2], 1/3 on [3,4].
      if (u < 2.0 / 3.0) return 1.0 + 1.5 * u;
      return 3.0 + 3.0 * (u - 2.0 / 3.0);
    case ExampleDensity::trimodal:
      // Mass 1/2 on [0,1/2], 1/4 on [1,3/2], 1/4 on [3,7/2].
      if (u < 0.5) return u;
      if (u < 0.75) return 1.0 + 2.0 * (u - 0.5);
      return 3.0 + 2.0 * (u - 0.75);
  }
  return 0.0;
}

std::vector<double> sample(ExampleDensity d, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("sample size must be positive");
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(size);
  for (std::size_t i = 0; i < size; ++i) xs.push_back(inverse_cdf(d, rng.uniform()));
  return xs;
}

}  // namespace ampdens
