#include "ampdens/inner_solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ampdens/errors.hpp"

namespace ampdens {

namespace {

// g = D alpha and E_i = alpha_i g_i - 1, recomputed from scratch.
void refresh(const GramMatrix& gram, const Eigen::VectorXd& alpha, Eigen::VectorXd& g,
             Eigen::VectorXd& e) {
  g.noalias() = gram.D * alpha;
  e = alpha.cwiseProduct(g).array() - 1.0;
}

AlphaState run(const GramMatrix& gram, Eigen::VectorXd alpha, const InnerOptions& options) {
  const std::size_t m = gram.m;
  const auto mi = static_cast<Eigen::Index>(m);
  if (alpha.size() != mi) throw std::invalid_argument("alpha length must equal the sample count");
  if (!((alpha.array() > 0.0).all())) throw std::invalid_argument("alpha must be strictly positive");

  const double delta = options.delta > 0.0 ? options.delta : default_delta(m);
  const std::size_t cap = options.max_updates > 0 ? options.max_updates : default_max_updates(m);

  AlphaState st;
  Eigen::VectorXd g(mi);
  refresh(gram, alpha, g, st.residuals);
  st.total_error = st.residuals.cwiseAbs().sum();
  st.min_alpha = alpha.minCoeff();
  if (options.keep_trace) st.trace.push_back(st.total_error);

  const double* dcol = nullptr;
  std::size_t since_refresh = 0;
  while (st.total_error > delta) {
    if (st.updates >= cap) {
      std::ostringstream msg;
      msg << "inner solve hit its cap of " << cap << " updates with E = " << st.total_error;
      throw ConvergenceError(msg.str(), st.total_error, std::move(st.trace));
    }

    // Largest |E_k|; strict comparison keeps the lowest index on ties.
    Eigen::Index k = 0;
    double worst = -1.0;
    for (Eigen::Index i = 0; i < mi; ++i) {
      const double a = std::abs(st.residuals(i));
      if (a > worst) {
        worst = a;
        k = i;
      }
    }

    dcol = gram.D.col(k).data();
    double s = 0.0;
    for (Eigen::Index i = 0; i < mi; ++i)
      if (i != k) s += dcol[i] * alpha(i);
    const double dkk = dcol[k];
    const double updated = positive_root(s, dkk);
    const double step = updated - alpha(k);
    alpha(k) = updated;
    if (updated < st.min_alpha) st.min_alpha = updated;

    for (Eigen::Index i = 0; i < mi; ++i) g(i) += step * dcol[i];
    g(k) = s + dkk * updated;

    if (++since_refresh >= m) {
      refresh(gram, alpha, g, st.residuals);
      since_refresh = 0;
    } else {
      st.residuals = alpha.cwiseProduct(g).array() - 1.0;
    }
    const double total = st.residuals.cwiseAbs().sum();
    ++st.updates;
    if (options.keep_trace) st.trace.push_back(total);

    if (!(total < st.total_error)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "inner solve stalled at E = " << st.total_error << " after " << st.updates
          << " updates (requested delta " << delta << ")";
      throw ConvergenceError(msg.str(), total, std::move(st.trace));
    }
    st.total_error = total;
  }

  st.alpha = std::move(alpha);
  return st;
}

}  // namespace

double default_delta(std::size_t m) { return 1e-10 * static_cast<double>(m); }

std::size_t default_max_updates(std::size_t m) { return 200 * m * m; }

AlphaState init_alpha(const GramMatrix& gram) {
  AlphaState st;
  const auto mi = static_cast<Eigen::Index>(gram.m);
  st.alpha = Eigen::VectorXd::Constant(mi, std::sqrt(1.0 / (gram.dbar * static_cast<double>(gram.m))));
  const Residuals res = residuals(gram, st.alpha);
  st.residuals = res.per_equation;
  st.total_error = res.total;
  st.min_alpha = st.alpha.minCoeff();
  st.trace.push_back(st.total_error);
  return st;
}

Residuals residuals(const GramMatrix& gram, const Eigen::VectorXd& alpha) {
  Residuals out;
  out.per_equation = alpha.cwiseProduct(gram.D * alpha).array() - 1.0;
  out.total = out.per_equation.cwiseAbs().sum();
  return out;
}

double positive_root(double s, double dkk) { return 2.0 / (s + std::sqrt(s * s + 4.0 * dkk)); }

double coordinate_update(const GramMatrix& gram, const Eigen::VectorXd& alpha, std::size_t k) {
  const auto ki = static_cast<Eigen::Index>(k);
  if (ki >= alpha.size()) throw std::out_of_range("coordinate index out of range");
  double s = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (i != ki) s += gram.D(i, ki) * alpha(i);
  return positive_root(s, gram.D(ki, ki));
}

AlphaState solve(const GramMatrix& gram, const InnerOptions& options) {
  return run(gram, init_alpha(gram).alpha, options);
}

AlphaState solve(const GramMatrix& gram, double delta, std::size_t max_updates) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  return solve(gram, InnerOptions{delta, max_updates, true});
}

AlphaState solve_from(const GramMatrix& gram, Eigen::VectorXd alpha0, const InnerOptions& options) {
  return run(gram, std::move(alpha0), options);
}

Eigen::VectorXd recover_u(const DesignMatrix& design, const Eigen::VectorXd& alpha, double r,
                          double tolerance) {
  const auto& b = design.entries;
  if (alpha.size() != b.cols()) throw std::invalid_argument("alpha length must equal the sample count");
  Eigen::VectorXd u = (r / static_cast<double>(b.cols())) * (b * alpha);
  const double norm2 = u.squaredNorm();
  if (std::abs(norm2 - r) > tolerance * r) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "recovered u has |u|^2 = " << norm2 << " against r = " << r << "; alpha is unconverged";
    throw ConvergenceError(msg.str(), std::abs(norm2 - r), {});
  }
  return u;
}

}  // namespace ampdens
