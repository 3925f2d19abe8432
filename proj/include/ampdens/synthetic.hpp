#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ampdens {

/// The three reference densities:
///   exp       exp(-x) on [0, inf)
///   bimodal   2/3 on [1,2], 1/3 on [3,4]
///   trimodal  1 on [0,1/2], 1/2 on [1,3/2], 1/2 on [3,7/2]
enum class ExampleDensity { exp, bimodal, trimodal };

ExampleDensity parse_density(std::string_view id);
std::string_view density_name(ExampleDensity d);

double true_pdf(ExampleDensity d, double x);

/// Interval carrying the density. The exponential is cut at x = 40, where
/// the remaining mass is e^-40.
struct Support {
  double lo;
  double hi;
};
Support support(ExampleDensity d);

/// Points where the density jumps.
std::vector<double> breakpoints(ExampleDensity d);

/// 64-bit Mersenne Twister (std::mt19937_64, fully specified by the
/// standard) with uniforms built from its top 53 bits, so draws are
/// identical on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0,1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// Inverse-transform draw from a uniform u in [0,1).
double inverse_cdf(ExampleDensity d, double u);

/// `size` draws. Throws std::invalid_argument for size 0.
std::vector<double> sample(ExampleDensity d, std::size_t size, std::uint64_t seed);

}  // namespace ampdens
