#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "ampdens/windows.hpp"

namespace ampdens {

/// Observations x_1..x_m together with the interval they live on and their
/// images t_j in [0,1].
class SampleSet {
public:
  SampleSet(std::vector<double> observations, DomainMap domain);

  /// Uses DomainMap::around(observations).
  static SampleSet with_default_domain(std::vector<double> observations);

  std::size_t size() const noexcept { return observations_.size(); }
  const std::vector<double>& observations() const noexcept { return observations_; }
  const DomainMap& domain() const noexcept { return domain_; }
  const std::vector<double>& unit_samples() const noexcept { return unit_; }

private:
  std::vector<double> observations_;
  DomainMap domain_;
  std::vector<double> unit_;
};

/// A_ij = phi_i(t_j), an (n+1) x m matrix.
Eigen::MatrixXd window_matrix(const WindowBasis& basis, const SampleSet& samples);

/// b_ij = v_i * phi_i(t_j). Every column holds a strictly positive entry.
struct DesignMatrix {
  Eigen::MatrixXd entries;

  std::size_t windows() const noexcept { return static_cast<std::size_t>(entries.rows()); }
  std::size_t samples() const noexcept { return static_cast<std::size_t>(entries.cols()); }
};

DesignMatrix build_design(const WindowBasis& basis, const SampleSet& samples,
                          const Eigen::VectorXd& v);
/// Same, from a precomputed window matrix.
DesignMatrix build_design(const Eigen::MatrixXd& windows, const Eigen::VectorXd& v);

/// D_kj = (r/m) (b_k . b_j), the matrix of the inner quadratic system.
struct GramMatrix {
  Eigen::MatrixXd D;
  double r = 1.0;
  std::size_t m = 0;
  double dbar = 0.0;  // largest entry
};

GramMatrix build_gram(const DesignMatrix& design, double r);

}  // namespace ampdens
