#include "ampdens/outer_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ampdens {

namespace {

double amplitude_loglik(const Eigen::MatrixXd& windows, const Eigen::VectorXd& weights,
                        const DomainMap& domain) {
  const Eigen::RowVectorXd l = weights.transpose() * windows;
  double total = 0.0;
  for (Eigen::Index j = 0; j < l.size(); ++j) total += std::log(l(j));
  return total - static_cast<double>(l.size()) * std::log(domain.width());
}

}  // namespace

AmplitudeState init_state(int n, double r) {
  if (n < 0) throw std::invalid_argument("window degree must be nonnegative");
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius r must be positive");
  AmplitudeState st;
  st.v = Eigen::VectorXd::Constant(n + 1, std::sqrt(r / (n + 1.0)));
  st.next_v = st.v;
  st.k = 1;
  return st;
}

void outer_step(AmplitudeState& state, const Eigen::MatrixXd& windows, const DomainMap& domain,
                const OuterStepOptions& options) {
  const double r = options.r;
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius r must be positive");
  const auto m = static_cast<std::size_t>(windows.cols());

  state.v = state.next_v;
  const DesignMatrix design = build_design(windows, state.v);
  const GramMatrix gram = build_gram(design, r);

  InnerOptions inner;
  inner.delta = options.delta > 0.0 ? options.delta : default_delta(m);
  inner.max_updates = options.max_inner > 0 ? options.max_inner : default_max_updates(m);
  inner.keep_trace = false;
  const AlphaState alpha = solve(gram, inner);

  // recover_u lands within (r/m) E of the sphere; project the rest away.
  Eigen::VectorXd u = recover_u(design, alpha.alpha, r);
  u *= std::sqrt(r / u.squaredNorm());

  const double ip = u.dot(state.v);
  // Cauchy-Schwarz gives ip <= r; rounding can overshoot by an ulp.
  const double theta = std::max(1.0, std::sqrt(r / ip));
  state.next_v = theta * u.cwiseProduct(state.v).cwiseSqrt();

  const Eigen::VectorXd weights = u.cwiseProduct(state.v);
  state.u = std::move(u);
  state.inner_product = ip;
  state.trace.theta.push_back(theta);
  state.trace.inner_product.push_back(ip);
  state.trace.loglik.push_back(amplitude_loglik(windows, weights, domain));
  state.trace.inner_updates.push_back(alpha.updates);
  ++state.k;
}

void outer_step(AmplitudeState& state, const WindowBasis& basis, const SampleSet& samples,
                const OuterStepOptions& options) {
  outer_step(state, window_matrix(basis, samples), samples.domain(), options);
}

bool converged(const AmplitudeState& state, double epsilon, double r) {
  if (state.u.size() == 0) throw std::logic_error("converged() needs at least one outer step");
  return state.inner_product + epsilon >= r;
}

FitResult fit_detailed(const WindowBasis& basis, const SampleSet& samples, const FitOptions& options) {
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (options.delta < 0.0) throw std::invalid_argument("delta must be positive");
  const std::size_t m = samples.size();
  const Eigen::MatrixXd windows = window_matrix(basis, samples);

  OuterStepOptions step;
  step.r = options.r;
  step.delta = options.delta > 0.0 ? options.delta : default_delta(m);
  step.max_inner = options.max_inner > 0 ? options.max_inner : default_max_updates(m);

  AmplitudeState state = init_state(basis.degree(), options.r);
  for (std::size_t iter = 0; iter < options.max_outer; ++iter) {
    outer_step(state, windows, samples.domain(), step);
    if (!converged(state, options.epsilon, options.r)) continue;

    const Eigen::VectorXd raw = state.u.cwiseProduct(state.v);
    const double scale = options.r / state.inner_product;
    std::vector<double> c(raw.size());
    std::vector<double> raw_c(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
      raw_c[i] = raw(i);
      c[i] = raw(i) * scale;
    }

    DensityModel::Metadata meta;
    meta.r = options.r;
    meta.raw_inner_product = state.inner_product;
    meta.m = m;
    meta.epsilon = options.epsilon;
    meta.delta = step.delta;
    DensityModel model(basis, samples.domain(), std::move(c), meta);
    model.attach_fit_record(std::move(raw_c), state.trace);
    return FitResult{std::move(model), std::move(state)};
  }

  std::ostringstream msg;
  msg.precision(17);
  msg << "outer iteration hit its cap of " << options.max_outer << " steps with sum u_i v_i = "
      << state.inner_product << " (r = " << options.r << ", epsilon = " << options.epsilon << ")";
  throw FitNotConverged(msg.str(), std::move(state));
}

DensityModel fit(const WindowBasis& basis, const SampleSet& samples, const FitOptions& options) {
  return fit_detailed(basis, samples, options).model;
}

}  // namespace ampdens
