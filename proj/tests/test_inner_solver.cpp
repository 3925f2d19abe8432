#include <cmath>
#include <random>

#include <doctest.h>

#include "ampdens/errors.hpp"
#include "ampdens/inner_solver.hpp"
#include "test_support.hpp"

using namespace ampdens;
using doctest::Approx;

namespace {

GramMatrix gram_of(const Eigen::MatrixXd& d) {
  GramMatrix g;
  g.D = d;
  g.r = 1.0;
  g.m = static_cast<std::size_t>(d.rows());
  g.dbar = d.maxCoeff();
  return g;
}

GramMatrix random_gram(std::mt19937_64& rng, int n, int m, DesignMatrix* design_out = nullptr) {
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<double> xs(m);
  for (auto& x : xs) x = unit(rng);
  const SampleSet s(xs, DomainMap(0, 1));
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n + 1, std::sqrt(1.0 / (n + 1)));
  auto design = build_design(WindowBasis(n), s, v);
  auto g = build_gram(design, 1.0);
  if (design_out) *design_out = std::move(design);
  return g;
}

}  // namespace

TEST_CASE("init_alpha examples") {
  CHECK(init_alpha(gram_of(Eigen::MatrixXd::Constant(1, 1, 4.0))).alpha(0) == 0.5);
  const auto id = init_alpha(gram_of(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(id.alpha(0) == Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(id.alpha(1) == id.alpha(0));

  std::mt19937_64 rng(1);
  const auto g = random_gram(rng, 2, 3);
  const auto st = init_alpha(g);
  const double expected = std::sqrt(1.0 / (g.D.maxCoeff() * 3));
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(st.alpha(k) == expected);
}

TEST_CASE("residuals examples") {
  const auto r1 = residuals(gram_of(Eigen::MatrixXd::Constant(1, 1, 4.0)), Eigen::VectorXd::Constant(1, 0.5));
  CHECK(r1.per_equation(0) == 0.0);
  CHECK(r1.total == 0.0);
  const auto r2 = residuals(gram_of(Eigen::MatrixXd::Identity(2, 2)), Eigen::VectorXd::Ones(2));
  CHECK(r2.total == 0.0);
  const auto r3 = residuals(gram_of(Eigen::MatrixXd::Ones(2, 2)), Eigen::VectorXd::Ones(2));
  CHECK(r3.per_equation(0) == 1.0);
  CHECK(r3.per_equation(1) == 1.0);
  CHECK(r3.total == 2.0);
}

TEST_CASE("coordinate update examples") {
  CHECK(positive_root(0.0, 1.0) == 1.0);
  CHECK(positive_root(0.0, 4.0) == 0.5);
  const double a = positive_root(3.0, 1.0);
  CHECK(a == Approx((-3.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-15));
  CHECK(std::abs(a * a + 3.0 * a - 1.0) <= 1e-15);
  CHECK(a == Approx(0.302776).epsilon(1e-6));
  // Large s: the rationalized root keeps full relative accuracy.
  const double tiny = positive_root(1e8, 1.0);
  CHECK(tiny * (1e8 + tiny) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coordinate update zeroes its own residual") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_gram(rng, 4, 6);
    Eigen::VectorXd alpha(6);
    for (auto& x : alpha) x = pos(rng);
    for (std::size_t k = 0; k < 6; ++k) {
      Eigen::VectorXd a = alpha;
      a(static_cast<Eigen::Index>(k)) = coordinate_update(g, alpha, k);
      CHECK(a(static_cast<Eigen::Index>(k)) > 0.0);
      CHECK(std::abs(residuals(g, a).per_equation(static_cast<Eigen::Index>(k))) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(coordinate_update(gram_of(Eigen::MatrixXd::Identity(2, 2)), Eigen::VectorXd::Ones(2), 2),
                  std::out_of_range);
}

TEST_CASE("solve examples") {
  const auto one = solve(gram_of(Eigen::MatrixXd::Constant(1, 1, 4.0)), 1e-10, 100);
  CHECK(one.alpha(0) == 0.5);
  CHECK(one.updates <= 1);

  const auto id = solve(gram_of(Eigen::MatrixXd::Identity(3, 3)), 1e-10, 1000);
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(id.alpha(k) == Approx(1.0).epsilon(1e-10));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_gram(rng, 3, 5);
    const auto st = solve(g, 1e-10, 0);
    CHECK(st.residuals.cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::VectorXd ref = testing::newton_alpha(g.D);
    CHECK((st.alpha - ref).cwiseAbs().maxCoeff() <= 1e-6);
  }
  CHECK_THROWS(solve(gram_of(Eigen::MatrixXd::Identity(2, 2)), 0.0, 10));
}

TEST_CASE("solve reports the cap with its trace") {
  std::mt19937_64 rng(2);
  const auto g = random_gram(rng, 5, 20);
  try {
    solve(g, 1e-14, 3);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.trace().size() == 4);
    CHECK(e.final_error() == e.trace().back());
    CHECK(e.final_error() > 1e-14);
  }
}

TEST_CASE("descent, positivity and convergence on random instances") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = testing::random_instance(rng, 15, 30);
    const auto design = build_design(inst.basis, inst.samples, inst.v);
    const auto g = build_gram(design, 1.0);
    const auto st = solve(g, 1e-10, 0);
    REQUIRE(st.total_error <= 1e-10);
    CHECK(testing::strictly_decreasing(st.trace));
    CHECK(st.trace.size() == st.updates + 1);
    CHECK(st.min_alpha > 0.0);
    CHECK(st.alpha.minCoeff() > 0.0);
  }
}

TEST_CASE("the solution does not depend on the starting point") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> factor(0.1, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = testing::random_instance(rng, 8, 15);
    const auto g = build_gram(build_design(inst.basis, inst.samples, inst.v), 1.0);
    const auto base = solve(g, 1e-10, 0);
    for (int p = 0; p < 10; ++p) {
      Eigen::VectorXd a0 = init_alpha(g).alpha;
      for (auto& x : a0) x *= factor(rng);
      const auto other = solve_from(g, a0, InnerOptions{1e-10, 0, false});
      CHECK((other.alpha - base.alpha).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
}

TEST_CASE("recover_u examples") {
  DesignMatrix one{Eigen::MatrixXd(2, 1)};
  one.entries << 3.0, 4.0;
  const auto g = build_gram(one, 1.0);
  const auto st = solve(g, 1e-12, 10);
  CHECK(st.alpha(0) == Approx(0.2).epsilon(1e-15));
  const auto u = recover_u(one, st.alpha, 1.0);
  CHECK(u(0) == Approx(0.6).epsilon(1e-15));
  CHECK(u(1) == Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(u.squaredNorm() - 1.0) <= 1e-15);

  DesignMatrix orth{Eigen::MatrixXd(2, 2)};
  orth.entries << std::sqrt(2.0), 0.0, 0.0, std::sqrt(2.0);
  const auto go = build_gram(orth, 1.0);
  const auto so = solve(go, 1e-12, 100);
  CHECK(std::abs(recover_u(orth, so.alpha, 1.0).squaredNorm() - 1.0) <= 1e-12);

  std::mt19937_64 rng(5);
  DesignMatrix d;
  const auto gr = random_gram(rng, 3, 5, &d);
  const auto sr = solve(gr, 1e-10, 0);
  const auto ur = recover_u(d, sr.alpha, 1.0);
  CHECK(ur.minCoeff() >= 0.0);
  CHECK(testing::stationarity_residual(d.entries, ur, 1.0) <= 1e-8);

  CHECK_THROWS_AS(recover_u(d, Eigen::VectorXd::Constant(5, 10.0), 1.0), ConvergenceError);
}

TEST_CASE("recovered u is stationary and on the sphere") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = testing::random_instance(rng, 15, 30);
    const auto design = build_design(inst.basis, inst.samples, inst.v);
    for (double r : {1.0, 2.5}) {
      const auto g = build_gram(design, r);
      const auto st = solve(g, 1e-10, 0);
      const auto u = recover_u(design, st.alpha, r);
      CHECK(std::abs(u.squaredNorm() - r) <= 1e-8);
      CHECK(testing::stationarity_residual(design.entries, u, r) <= 1e-8);
    }
  }
}
