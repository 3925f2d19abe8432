#include "ampdens/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ampdens/design.hpp"
#include "ampdens/errors.hpp"
#include "ampdens/estimator.hpp"
#include "ampdens/oracle.hpp"
#include "ampdens/outer_solver.hpp"
#include "ampdens/quadrature.hpp"
#include "ampdens/synthetic.hpp"

namespace ampdens::cli {

namespace {

constexpr std::size_t kEvalGrid = 512;
constexpr std::size_t kVerifyGrid = 101;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw FormatError("cannot parse '" + t + "' as a number (" + where + ")");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void require_path(const std::filesystem::path& p, const char* flag) {
  if (p.empty()) throw std::invalid_argument(std::string(flag) + " is required");
}

SampleSet load_sample_set(const RunConfig& config) {
  require_path(config.input, "--input");
  std::vector<double> xs = read_samples(config.input);
  if (xs.empty()) throw std::invalid_argument("sample file " + config.input.string() + " is empty");
  if (config.interval) return SampleSet(std::move(xs), DomainMap(config.interval->first, config.interval->second));
  return SampleSet::with_default_domain(std::move(xs));
}

void write_trace(const FitTrace& trace, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "k,theta_bar,inner_product,loglik,inner_updates\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << (i + 1) << ',' << format_double(trace.theta[i]) << ','
        << format_double(trace.inner_product[i]) << ',' << format_double(trace.loglik[i]) << ','
        << trace.inner_updates[i] << '\n';
  }
  if (!out) throw std::runtime_error("failed writing trace " + path.string());
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.degree < 0) throw std::invalid_argument("--degree must be nonnegative");
  if (!(config.r > 0.0)) throw std::invalid_argument("--r must be positive");
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
  if (config.delta < 0.0) throw std::invalid_argument("--delta must be positive");
  if (config.grid && *config.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  if (config.interval && !(config.interval->second > config.interval->first))
    throw std::invalid_argument("--interval needs a < b");
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    xs.push_back(parse_double(line, path.string() + ":" + std::to_string(lineno)));
  }
  return xs;
}

void write_samples(const std::vector<double>& xs, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (double x : xs) out << format_double(x) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::pair<double, double> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--interval expects a,b");
  return {parse_double(text.substr(0, comma), "--interval"),
          parse_double(text.substr(comma + 1), "--interval")};
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_gen(const RunConfig& config, std::ostream& log) {
  require_path(config.output, "--output");
  const ExampleDensity d = parse_density(config.density);
  const auto xs = sample(d, config.size, config.seed);
  write_samples(xs, config.output);
  log << "wrote " << xs.size() << " " << density_name(d) << " samples to " << config.output.string() << "\n";
  return kOk;
}

int cmd_fit(const RunConfig& config, std::ostream& log) {
  require_path(config.output, "--output");
  const SampleSet samples = load_sample_set(config);
  const WindowBasis basis(config.degree);

  FitOptions options;
  options.r = config.r;
  options.epsilon = config.epsilon;
  options.delta = config.delta;
  options.max_outer = config.max_outer;
  options.max_inner = config.max_inner;

  try {
    const FitResult result = fit_detailed(basis, samples, options);
    save(result.model, config.output);
    if (!config.trace.empty()) write_trace(result.model.trace(), config.trace);
    log << "converged after " << result.model.trace().size() << " outer steps; sum u_i v_i = "
        << format_double(result.state.inner_product) << "\n";
    return kOk;
  } catch (const FitNotConverged& e) {
    if (!config.trace.empty()) write_trace(e.state().trace, config.trace);
    throw;
  }
}

int cmd_eval(const RunConfig& config, std::ostream& log) {
  require_path(config.input, "--input");
  require_path(config.output, "--output");
  const DensityModel model = load(config.input);
  const std::size_t n = config.grid.value_or(kEvalGrid);
  const double a = model.domain().a();
  const double b = model.domain().b();

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = model.pdf(x);
  }
  auto out = open_out(config.output);
  out << "x,pdf\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out << format_double(x) << ',' << format_double(values[i]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + config.output.string());
  log << "wrote " << n << " grid rows to " << config.output.string() << "\n";
  return kOk;
}

double integrated_squared_error(const DensityModel& model, ExampleDensity d) {
  const Support s = support(d);
  const double lo = std::min(model.domain().a(), s.lo);
  const double hi = std::max(model.domain().b(), s.hi);
  std::vector<double> cuts = breakpoints(d);
  cuts.push_back(model.domain().a());
  cuts.push_back(model.domain().b());
  return integrate_adaptive(
             [&](double x) {
               const double diff = model.pdf(x) - true_pdf(d, x);
               return diff * diff;
             },
             lo, hi, 1e-10, cuts)
      .value;
}

int cmd_compare(const RunConfig& config, std::ostream& log) {
  require_path(config.input, "--input");
  require_path(config.output, "--output");
  const ExampleDensity d = parse_density(config.density);
  const DensityModel model = load(config.input);
  const double ise = integrated_squared_error(model, d);

  auto out = open_out(config.output);
  out << "metric,value\n";
  out << "ise," << format_double(ise) << '\n';
  if (!config.holdout.empty()) {
    const auto xs = read_samples(config.holdout);
    double ll = 0.0;
    for (double x : xs) ll += std::log(model.pdf(x));
    out << "holdout_m," << xs.size() << '\n';
    out << "holdout_loglik," << format_double(ll) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + config.output.string());
  log << "ise = " << format_double(ise) << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  const std::size_t windows_count = static_cast<std::size_t>(config.degree) + 1;
  if (windows_count > oracle::kMaxGridWindows) {
    std::ostringstream msg;
    msg << "verify refuses " << windows_count << " windows: the grid oracle is limited to "
        << oracle::kMaxGridWindows << " (its cost grows as resolution^(windows-1))";
    throw std::invalid_argument(msg.str());
  }
  const SampleSet samples = load_sample_set(config);
  if (samples.size() > oracle::kMaxGradientSamples) {
    std::ostringstream msg;
    msg << "verify refuses " << samples.size() << " samples: the gradient oracle is limited to "
        << oracle::kMaxGradientSamples;
    throw std::invalid_argument(msg.str());
  }

  const WindowBasis basis(config.degree);
  FitOptions options;
  options.r = config.r;
  options.epsilon = config.epsilon;
  options.delta = config.delta;
  options.max_outer = config.max_outer;
  options.max_inner = config.max_inner;
  const DensityModel model = fit(basis, samples, options);

  const Eigen::MatrixXd a = window_matrix(basis, samples);
  Eigen::VectorXd c(static_cast<Eigen::Index>(model.coefficients().size()));
  for (std::size_t i = 0; i < model.coefficients().size(); ++i) c(static_cast<Eigen::Index>(i)) = model.coefficients()[i];
  const double fit_ll = oracle::amplitude_loglik(a, c.cwiseSqrt());

  const auto grid = oracle::grid_search(a, config.r, config.grid.value_or(kVerifyGrid));
  oracle::GradientOptions go;
  go.starts = config.starts;
  go.seed = config.seed;
  const auto pg = oracle::projected_gradient(a, config.r, go);

  const double best = std::max(grid.best_loglik, pg.best_loglik);
  const Eigen::VectorXd pg_c = pg.best_coefficients.cwiseAbs2();
  double spread = 0.0;
  for (const auto& e : pg.endpoints) spread = std::max(spread, (e.cwiseAbs2() - pg_c).cwiseAbs().maxCoeff());

  std::ostringstream report;
  report << "metric,value\n";
  report << "windows," << windows_count << '\n';
  report << "samples," << samples.size() << '\n';
  report << "fit_loglik," << format_double(fit_ll) << '\n';
  report << "grid_best_loglik," << format_double(grid.best_loglik) << '\n';
  report << "gradient_best_loglik," << format_double(pg.best_loglik) << '\n';
  report << "loglik_gap," << format_double(std::max(0.0, best - fit_ll)) << '\n';
  report << "multistart_spread," << format_double(spread) << '\n';
  report << "fit_vs_gradient_max_coef_diff," << format_double((c - pg_c).cwiseAbs().maxCoeff()) << '\n';
  report << "gradient_check_error," << format_double(pg.gradient_check_error) << '\n';

  if (config.output.empty()) {
    log << report.str();
  } else {
    auto out = open_out(config.output);
    out << report.str();
    log << "wrote verification report to " << config.output.string() << "\n";
  }
  return kOk;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    validate(config);
    if (config.subcommand == "gen") return cmd_gen(config, log);
    if (config.subcommand == "fit") return cmd_fit(config, log);
    if (config.subcommand == "eval") return cmd_eval(config, log);
    if (config.subcommand == "compare") return cmd_compare(config, log);
    if (config.subcommand == "verify") return cmd_verify(config, log);
    throw std::invalid_argument("unknown subcommand '" + config.subcommand + "'");
  } catch (const ConvergenceError& e) {
    log << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const InfeasibleError& e) {
    log << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::out_of_range& e) {
    log << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kIoOrConfig;
  }
}

}  // namespace ampdens::cli
