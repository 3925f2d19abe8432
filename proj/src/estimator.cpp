#include "ampdens/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ampdens/errors.hpp"
#include "ampdens/quadrature.hpp"

namespace ampdens {

namespace {

constexpr double kSumTolerance = 1e-12;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

DensityModel::DensityModel(WindowBasis basis, DomainMap domain, std::vector<double> coefficients,
                           Metadata metadata)
    : basis_(std::move(basis)),
      domain_(domain),
      coefficients_(std::move(coefficients)),
      meta_(metadata) {
  if (!(meta_.r > 0.0)) throw FormatError("model r must be positive");
  if (coefficients_.size() != basis_.size()) {
    std::ostringstream msg;
    msg << "model has " << coefficients_.size() << " coefficients for " << basis_.size() << " windows";
    throw FormatError(msg.str());
  }
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (!(coefficients_[i] >= 0.0) || !std::isfinite(coefficients_[i])) {
      std::ostringstream msg;
      msg << "coefficient " << i << " = " << coefficients_[i] << " violates c_i >= 0";
      throw FormatError(msg.str());
    }
  }
  const double sum = std::accumulate(coefficients_.begin(), coefficients_.end(), 0.0);
  if (std::abs(sum - meta_.r) > kSumTolerance * meta_.r) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "coefficients violate the constraint sum c_i = r: sum is " << sum << ", r is " << meta_.r;
    throw FormatError(msg.str());
  }
}

void DensityModel::attach_fit_record(std::vector<double> raw_coefficients, FitTrace trace) {
  raw_ = std::move(raw_coefficients);
  trace_ = std::move(trace);
}

double DensityModel::unit_pdf(double t) const {
  double g = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    if (coefficients_[i] != 0.0) g += coefficients_[i] * basis_(i, t);
  return g;
}

double DensityModel::pdf(double x) const {
  if (!domain_.contains(x)) return 0.0;
  return domain_.density_back(unit_pdf(domain_.to_unit(x)));
}

double DensityModel::log_likelihood(const std::vector<double>& xs) const {
  double total = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double p = domain_.density_back(unit_pdf(domain_.to_unit(xs[j])));
    if (!(p > 0.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "sample " << j << " (x = " << xs[j] << ") has zero density under the model";
      throw InfeasibleError(msg.str(), j);
    }
    total += std::log(p);
  }
  return total;
}

double DensityModel::log_likelihood(const SampleSet& samples) const {
  return log_likelihood(samples.observations());
}

double DensityModel::integrate(double tolerance) const {
  return integrate_adaptive([this](double x) { return pdf(x); }, domain_.a(), domain_.b(), tolerance)
      .value;
}

void save(const DensityModel& model, std::ostream& out) {
  const auto& meta = model.metadata();
  out << "{\n";
  out << "  \"format_version\": " << kModelFormatVersion << ",\n";
  out << "  \"basis_kind\": \"bernstein\",\n";
  out << "  \"degree\": " << model.basis().degree() << ",\n";
  out << "  \"a\": " << g17(model.domain().a()) << ",\n";
  out << "  \"b\": " << g17(model.domain().b()) << ",\n";
  out << "  \"r\": " << g17(meta.r) << ",\n";
  out << "  \"coefficients\": [";
  const auto& c = model.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << g17(c[i]);
  out << "],\n";
  out << "  \"raw_inner_product\": " << g17(meta.raw_inner_product) << ",\n";
  out << "  \"m\": " << meta.m << ",\n";
  out << "  \"epsilon\": " << g17(meta.epsilon) << ",\n";
  out << "  \"delta\": " << g17(meta.delta) << "\n";
  out << "}\n";
  if (!out) throw std::runtime_error("failed to write model document");
}

void save(const DensityModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save(model, out);
}

DensityModel load(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed model document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("model document must be an object");

  static const std::set<std::string> fields{"format_version", "basis_kind", "degree", "a", "b", "r",
                                            "coefficients", "raw_inner_product", "m", "epsilon",
                                            "delta"};
  for (const auto& name : fields)
    if (!doc.contains(name)) throw FormatError("model document lacks field '" + name + "'");
  for (const auto& [key, value] : doc.items())
    if (!fields.count(key)) throw FormatError("unknown model field '" + key + "'");

  auto number = [&](const char* name) {
    const auto& v = doc.at(name);
    if (!v.is_number()) throw FormatError(std::string("field '") + name + "' must be a number");
    return v.get<double>();
  };
  auto integer = [&](const char* name) {
    const auto& v = doc.at(name);
    if (!v.is_number_integer()) throw FormatError(std::string("field '") + name + "' must be an integer");
    return v.get<long long>();
  };

  if (integer("format_version") != kModelFormatVersion)
    throw FormatError("unsupported model format_version");
  if (!doc.at("basis_kind").is_string() || doc.at("basis_kind").get<std::string>() != "bernstein")
    throw FormatError("basis_kind must be \"bernstein\"");
  const long long degree = integer("degree");
  if (degree < 0) throw FormatError("degree must be nonnegative");
  const long long m = integer("m");
  if (m < 1) throw FormatError("m must be positive");

  const auto& cs = doc.at("coefficients");
  if (!cs.is_array()) throw FormatError("coefficients must be an array");
  std::vector<double> c;
  c.reserve(cs.size());
  for (const auto& v : cs) {
    if (!v.is_number()) throw FormatError("coefficients must be numbers");
    c.push_back(v.get<double>());
  }

  DensityModel::Metadata meta;
  meta.r = number("r");
  meta.raw_inner_product = number("raw_inner_product");
  meta.m = static_cast<std::size_t>(m);
  meta.epsilon = number("epsilon");
  meta.delta = number("delta");
  if (!(meta.epsilon > 0.0) || !(meta.delta > 0.0))
    throw FormatError("epsilon and delta must be positive");

  try {
    return DensityModel(WindowBasis(static_cast<int>(degree)), DomainMap(number("a"), number("b")),
                        std::move(c), meta);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid model document: ") + e.what());
  }
}

DensityModel load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

}  // namespace ampdens
