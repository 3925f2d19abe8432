#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ampdens/design.hpp"
#include "ampdens/windows.hpp"

namespace ampdens {

/// Per-outer-iteration record of a fit.
struct FitTrace {
  std::vector<double> theta;          // rescaling factor sqrt(r / sum u_i v_i)
  std::vector<double> inner_product;  // sum u_i v_i
  std::vector<double> loglik;         // log-likelihood of sum u_i v_i phi_i
  std::vector<std::size_t> inner_updates;

  std::size_t size() const noexcept { return theta.size(); }
};

/// f(x) = sum_i c_i phi_i((x-a)/(b-a)) / (b-a), with c_i >= 0 and sum c_i = r.
class DensityModel {
public:
  struct Metadata {
    double r = 1.0;
    double raw_inner_product = 0.0;
    std::size_t m = 0;
    double epsilon = 0.0;
    double delta = 0.0;
  };

  /// Validates c_i >= 0, sizes, and |sum c_i - r| <= 1e-12 * r.
  DensityModel(WindowBasis basis, DomainMap domain, std::vector<double> coefficients,
               Metadata metadata);

  const WindowBasis& basis() const noexcept { return basis_; }
  const DomainMap& domain() const noexcept { return domain_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  const Metadata& metadata() const noexcept { return meta_; }
  double r() const noexcept { return meta_.r; }

  /// u_i v_i before the final rescaling to sum r. Empty for loaded models.
  const std::vector<double>& raw_coefficients() const noexcept { return raw_; }
  const FitTrace& trace() const noexcept { return trace_; }

  void attach_fit_record(std::vector<double> raw_coefficients, FitTrace trace);

  /// Zero outside [a,b].
  double pdf(double x) const;
  /// Density of the transformed variable t on [0,1] (no Jacobian).
  double unit_pdf(double t) const;

  /// sum_j ln pdf(x_j). Throws InfeasibleError naming the first sample with
  /// zero density, std::out_of_range for samples outside [a,b].
  double log_likelihood(const SampleSet& samples) const;
  double log_likelihood(const std::vector<double>& xs) const;

  /// Adaptive quadrature of pdf over [a,b].
  double integrate(double tolerance = 1e-10) const;

private:
  WindowBasis basis_;
  DomainMap domain_;
  std::vector<double> coefficients_;
  Metadata meta_;
  std::vector<double> raw_;
  FitTrace trace_;
};

/// Model documents are JSON objects with exactly the fields format_version,
/// basis_kind, degree, a, b, r, coefficients, raw_inner_product, m, epsilon,
/// delta. Doubles are written with 17 significant digits, so a save/load
/// cycle reproduces every coefficient bit for bit.
void save(const DensityModel& model, std::ostream& out);
void save(const DensityModel& model, const std::filesystem::path& path);
DensityModel load(std::istream& in);
DensityModel load(const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

}  // namespace ampdens
