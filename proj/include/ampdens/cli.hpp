#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ampdens/estimator.hpp"
#include "ampdens/synthetic.hpp"

namespace ampdens::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 2,
  kInfeasible = 3,
  kIoOrConfig = 4,
};

struct RunConfig {
  std::string subcommand;
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path trace;
  std::filesystem::path holdout;
  int degree = 10;
  std::optional<std::pair<double, double>> interval;
  double r = 1.0;
  double epsilon = 1e-8;
  double delta = 0.0;          // 0: 1e-10 * m
  std::size_t max_outer = 10000;
  std::size_t max_inner = 0;   // 0: 200 * m^2
  std::optional<std::size_t> grid;  // eval: 512 points; verify: 101 angles per axis
  std::uint64_t seed = 1;
  std::string density;
  std::size_t size = 0;
  std::size_t starts = 20;     // verify: projected-gradient starts
};

/// Throws std::invalid_argument on a tolerance <= 0, degree < 0 or grid < 2.
void validate(const RunConfig& config);

/// One value per line; blank lines ignored.
std::vector<double> read_samples(const std::filesystem::path& path);
void write_samples(const std::vector<double>& xs, const std::filesystem::path& path);

/// "a,b" -> (a, b).
std::pair<double, double> parse_interval(const std::string& text);

/// %.17g
std::string format_double(double x);

/// Integral of (model - truth)^2 over the union of the model interval and
/// the true support, each function zero outside its own support.
double integrated_squared_error(const DensityModel& model, ExampleDensity truth);

int cmd_gen(const RunConfig& config, std::ostream& log);
int cmd_fit(const RunConfig& config, std::ostream& log);
int cmd_eval(const RunConfig& config, std::ostream& log);
int cmd_compare(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);

/// Dispatch on config.subcommand, mapping exceptions to exit codes.
int run(const RunConfig& config, std::ostream& log);

}  // namespace ampdens::cli
