#include <cmath>
#include <random>

#include <doctest.h>

#include "ampdens/errors.hpp"
#include "ampdens/oracle.hpp"
#include "ampdens/outer_solver.hpp"
#include "test_support.hpp"

using namespace ampdens;
using namespace ampdens::oracle;
using doctest::Approx;

namespace {

Eigen::MatrixXd windows_at(int n, std::vector<double> ts) {
  return window_matrix(WindowBasis(n), SampleSet(std::move(ts), DomainMap(0, 1)));
}

Eigen::MatrixXd random_windows(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<double> ts(m);
  for (auto& t : ts) t = unit(rng);
  return windows_at(n, ts);
}

}  // namespace

TEST_CASE("grid search examples") {
  for (double r : {1.0, 2.0}) {
    const auto g = grid_search(windows_at(0, {0.3, 0.6}), r, 11);
    CHECK(g.best_coefficients.size() == 1);
    CHECK(g.best_coefficients(0) == Approx(std::sqrt(r)).epsilon(1e-15));
    CHECK(g.method == Method::grid);
  }
  const auto sym = grid_search(windows_at(1, {0.25, 0.75}), 1.0, 101);
  CHECK(sym.best_coefficients(0) == Approx(sym.best_coefficients(1)).epsilon(1e-12));
  CHECK(sym.evaluations == 101);

  std::mt19937_64 rng(4);
  const auto a = random_windows(rng, 2, 3);
  const auto g = grid_search(a, 1.0, 201);
  const auto p = projected_gradient(a, 1.0);
  CHECK(std::abs(g.best_loglik - p.best_loglik) <= 1e-3);
  CHECK(g.best_loglik <= p.best_loglik + 1e-12);
}

TEST_CASE("oracle points lie on the sphere") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_windows(rng, trial % 4, 1 + trial % 5);
    for (double r : {1.0, 3.0}) {
      CHECK(std::abs(grid_search(a, r, 41).best_coefficients.squaredNorm() - r) <= 1e-10);
      const auto p = projected_gradient(a, r, GradientOptions{5, 1, 1e-10, 200000});
      CHECK(std::abs(p.best_coefficients.squaredNorm() - r) <= 1e-10);
      for (const auto& e : p.endpoints) CHECK(e.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("projected gradient examples") {
  const auto p0 = projected_gradient(windows_at(0, {0.5}), 1.0);
  CHECK(p0.best_coefficients(0) == Approx(1.0).epsilon(1e-15));
  CHECK(p0.method == Method::projected_gradient);
  CHECK(p0.endpoints.size() == 20);

  const auto a2 = windows_at(1, {0.3, 0.55});
  const auto g = grid_search(a2, 1.0, 20001);
  const auto p = projected_gradient(a2, 1.0);
  CHECK((g.best_coefficients - p.best_coefficients).cwiseAbs().maxCoeff() <= 1e-4);

  std::mt19937_64 rng(12);
  const auto a = random_windows(rng, 2, 4);
  const auto multi = projected_gradient(a, 1.0, GradientOptions{20, 3, 1e-10, 200000});
  for (const auto& e : multi.endpoints) CHECK((e - multi.best_coefficients).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> pos(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const auto a = random_windows(rng, n, 2 + trial % 9);
    Eigen::VectorXd x(n + 1);
    for (auto& v : x) v = pos(rng);
    x /= x.norm();
    CHECK(gradient_relative_error(a, x) <= 1e-6);
  }
  const auto p = projected_gradient(random_windows(rng, 2, 5), 1.0);
  CHECK(p.gradient_check_error <= 1e-6);
}

TEST_CASE("loglik is -inf where a sample loses all mass") {
  const auto a = windows_at(1, {0.0});  // only window 0 sees t = 0
  CHECK(amplitude_loglik(a, Eigen::Vector2d(0.0, 1.0)) == -std::numeric_limits<double>::infinity());
  CHECK(std::isfinite(amplitude_loglik(a, Eigen::Vector2d(1.0, 0.0))));
}

TEST_CASE("cost guards") {
  CHECK_THROWS_AS(grid_search(windows_at(4, {0.5}), 1.0, 11), std::invalid_argument);
  CHECK_NOTHROW(grid_search(windows_at(3, {0.5}), 1.0, 5));
  CHECK_THROWS_AS(grid_search(windows_at(1, {0.5}), 1.0, 1), std::invalid_argument);
  std::vector<double> many(201, 0.5);
  CHECK_THROWS_AS(projected_gradient(windows_at(1, many), 1.0), std::invalid_argument);
  many.pop_back();
  CHECK_NOTHROW(projected_gradient(windows_at(1, many), 1.0, GradientOptions{2, 1, 1e-10, 200000}));
}

TEST_CASE("fit reaches the oracle optimum on tiny instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<int>(0, 2)(rng);
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    std::vector<double> ts(m);
    for (auto& t : ts) t = unit(rng);
    const SampleSet s(ts, DomainMap(0, 1));
    const auto a = window_matrix(WindowBasis(n), s);
    const auto model = fit(WindowBasis(n), s);
    const auto g = grid_search(a, 1.0, 201);
    CHECK(model.log_likelihood(s) >= g.best_loglik - 1e-4);
  }
}
