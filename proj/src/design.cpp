#include "ampdens/design.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ampdens/errors.hpp"

namespace ampdens {

SampleSet::SampleSet(std::vector<double> observations, DomainMap domain)
    : observations_(std::move(observations)), domain_(domain) {
  if (observations_.empty()) throw std::invalid_argument("sample set needs at least one observation");
  unit_.reserve(observations_.size());
  for (double x : observations_) unit_.push_back(domain_.to_unit(x));
}

SampleSet SampleSet::with_default_domain(std::vector<double> observations) {
  const DomainMap domain = DomainMap::around(observations);
  return SampleSet(std::move(observations), domain);
}

Eigen::MatrixXd window_matrix(const WindowBasis& basis, const SampleSet& samples) {
  const auto& t = samples.unit_samples();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = basis.eval_all(t[j]);
  return a;
}

DesignMatrix build_design(const Eigen::MatrixXd& windows, const Eigen::VectorXd& v) {
  if (v.size() != windows.rows())
    throw std::invalid_argument("amplitude vector length must equal the window count");
  if ((v.array() < 0.0).any()) throw std::invalid_argument("amplitudes must be nonnegative");

  DesignMatrix design{v.asDiagonal() * windows};
  for (Eigen::Index j = 0; j < design.entries.cols(); ++j) {
    if (!(design.entries.col(j).maxCoeff() > 0.0)) {
      std::ostringstream msg;
      msg << "infeasible: sample " << j << " is not covered by any positive weighted window";
      throw InfeasibleError(msg.str(), static_cast<std::size_t>(j));
    }
  }
  return design;
}

DesignMatrix build_design(const WindowBasis& basis, const SampleSet& samples,
                          const Eigen::VectorXd& v) {
  return build_design(window_matrix(basis, samples), v);
}

GramMatrix build_gram(const DesignMatrix& design, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius r must be positive");
  const auto& b = design.entries;
  const Eigen::Index m = b.cols();

  GramMatrix gram;
  gram.r = r;
  gram.m = static_cast<std::size_t>(m);
  gram.D.resize(m, m);
  const double scale = r / static_cast<double>(m);
  // Fill one triangle and mirror, so D is symmetric bit for bit.
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = j; k < m; ++k) {
      const double d = scale * b.col(j).dot(b.col(k));
      gram.D(j, k) = d;
      gram.D(k, j) = d;
    }
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    if (!(gram.D(k, k) > 0.0)) {
      std::ostringstream msg;
      msg << "infeasible: zero Gram diagonal at sample " << k;
      throw InfeasibleError(msg.str(), static_cast<std::size_t>(k));
    }
  }
  gram.dbar = gram.D.maxCoeff();
  return gram;
}

}  // namespace ampdens
