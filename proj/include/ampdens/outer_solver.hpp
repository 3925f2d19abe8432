#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "ampdens/design.hpp"
#include "ampdens/errors.hpp"
#include "ampdens/estimator.hpp"
#include "ampdens/inner_solver.hpp"
#include "ampdens/windows.hpp"

namespace ampdens {

/// Amplitude iteration state. Each step maximizes the likelihood of
/// sum_i u_i (v_i phi_i) over the sphere |u|^2 = r with v frozen, then
/// proposes v'_i = theta * sqrt(u_i v_i) with theta restoring |v'|^2 = r.
struct AmplitudeState {
  Eigen::VectorXd u;       // empty before the first step
  Eigen::VectorXd v;       // amplitudes u was solved against
  Eigen::VectorXd next_v;  // rescaled geometric mean, used by the next step
  std::size_t k = 1;       // index of the next outer iteration
  double inner_product = 0.0;
  FitTrace trace;
};

/// v_i = sqrt(r / (n+1)).
AmplitudeState init_state(int n, double r);

struct OuterStepOptions {
  double r = 1.0;
  double delta = 0.0;           // 0 selects 1e-10 * m
  std::size_t max_inner = 0;    // 0 selects 200 * m^2
};

/// One pass of (solve for u, rescale v). `windows` is window_matrix(basis, samples).
void outer_step(AmplitudeState& state, const Eigen::MatrixXd& windows, const DomainMap& domain,
                const OuterStepOptions& options);
void outer_step(AmplitudeState& state, const WindowBasis& basis, const SampleSet& samples,
                const OuterStepOptions& options);

/// sum u_i v_i + epsilon >= r.
bool converged(const AmplitudeState& state, double epsilon, double r);

struct FitOptions {
  double r = 1.0;
  double epsilon = 1e-8;
  double delta = 0.0;            // 0 selects 1e-10 * m
  std::size_t max_outer = 10000;
  std::size_t max_inner = 0;     // 0 selects 200 * m^2
};

/// Raised when the outer cap is reached; carries the state for diagnosis.
class FitNotConverged : public ConvergenceError {
public:
  FitNotConverged(const std::string& what, AmplitudeState state)
      : ConvergenceError(what, state.inner_product, state.trace.inner_product),
        state_(std::move(state)) {}

  const AmplitudeState& state() const noexcept { return state_; }

private:
  AmplitudeState state_;
};

/// Runs outer steps until converged, then emits c_i = u_i v_i rescaled so
/// that sum c_i = r. The raw products and traces are attached to the model.
DensityModel fit(const WindowBasis& basis, const SampleSet& samples, const FitOptions& options = {});

struct FitResult {
  DensityModel model;
  AmplitudeState state;
};

/// fit() plus the final amplitude state.
FitResult fit_detailed(const WindowBasis& basis, const SampleSet& samples,
                       const FitOptions& options = {});

}  // namespace ampdens
