#include <cmath>
#include <random>

#include <doctest.h>

#include "ampdens/design.hpp"
#include "ampdens/errors.hpp"
#include "test_support.hpp"

using namespace ampdens;
using doctest::Approx;

TEST_CASE("build_design examples") {
  const SampleSet at_zero({0.0}, DomainMap(0, 1));
  const auto d = build_design(WindowBasis(1), at_zero, Eigen::Vector2d(1, 1));
  CHECK(d.windows() == 2);
  CHECK(d.samples() == 1);
  CHECK(d.entries(0, 0) == 2.0);
  CHECK(d.entries(1, 0) == 0.0);

  const SampleSet mid({0.5}, DomainMap(0, 1));
  const auto e = build_design(WindowBasis(2), mid, Eigen::Vector3d(1, 2, 1));
  CHECK(e.entries(0, 0) == Approx(0.75).epsilon(1e-15));
  CHECK(e.entries(1, 0) == Approx(3.0).epsilon(1e-15));
  CHECK(e.entries(2, 0) == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("build_design feasibility errors") {
  const SampleSet s({0.2, 0.7}, DomainMap(0, 1));
  CHECK_THROWS_AS(build_design(WindowBasis(3), s, Eigen::VectorXd::Zero(4)), InfeasibleError);

  // Sample 1 sits at t=1 where only the last window is nonzero; zeroing it
  // leaves that column empty.
  const SampleSet edge({0.5, 1.0}, DomainMap(0, 1));
  try {
    build_design(WindowBasis(2), edge, Eigen::Vector3d(1, 1, 0));
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.sample_index() == 1);
  }

  CHECK_THROWS_AS(build_design(WindowBasis(1), s, Eigen::Vector2d(1, -1)), std::invalid_argument);
  CHECK_THROWS_AS(build_design(WindowBasis(1), s, Eigen::Vector3d(1, 1, 1)), std::invalid_argument);
}

TEST_CASE("sample sets reject observations outside the interval") {
  CHECK_THROWS_AS(SampleSet({0.5, 1.5}, DomainMap(0, 1)), std::out_of_range);
  CHECK_THROWS(SampleSet({}, DomainMap(0, 1)));
  const auto s = SampleSet::with_default_domain({3.0, 1.0, 2.0});
  CHECK(s.unit_samples()[1] >= 0.0);
  CHECK(s.unit_samples()[0] <= 1.0);
  CHECK(s.unit_samples()[2] == Approx(0.5));
}

TEST_CASE("build_gram examples") {
  DesignMatrix one{Eigen::MatrixXd(2, 1)};
  one.entries << 2.0, 0.0;
  const auto g1 = build_gram(one, 1.0);
  CHECK(g1.D.rows() == 1);
  CHECK(g1.D(0, 0) == 4.0);
  CHECK(g1.dbar == 4.0);

  DesignMatrix orth{Eigen::MatrixXd(2, 2)};
  orth.entries << std::sqrt(2.0), 0.0, 0.0, std::sqrt(2.0);
  const auto g2 = build_gram(orth, 1.0);
  CHECK(g2.D(0, 0) == Approx(1.0).epsilon(1e-15));
  CHECK(g2.D(1, 1) == Approx(1.0).epsilon(1e-15));
  CHECK(g2.D(0, 1) == 0.0);
  CHECK(g2.D(1, 0) == 0.0);
  CHECK(g2.m == 2);

  DesignMatrix zero_col{Eigen::MatrixXd::Zero(2, 2)};
  zero_col.entries(0, 0) = 1.0;
  CHECK_THROWS_AS(build_gram(zero_col, 1.0), InfeasibleError);
  CHECK_THROWS(build_gram(one, 0.0));
}

TEST_CASE("Gram matches the naive triple loop on random designs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = testing::random_instance(rng, 6, 12);
    const auto design = build_design(inst.basis, inst.samples, inst.v);
    const auto g = build_gram(design, 1.0);
    const Eigen::MatrixXd ref = testing::naive_gram(design.entries, 1.0);
    CHECK((g.D - ref).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    CHECK(g.dbar == g.D.maxCoeff());
  }
  // The fixed 3-sample, n=2 case.
  const SampleSet s({0.1, 0.45, 0.8}, DomainMap(0, 1));
  const auto design = build_design(WindowBasis(2), s, Eigen::Vector3d(0.3, 0.9, 0.5));
  const auto g = build_gram(design, 1.0);
  CHECK((g.D - testing::naive_gram(design.entries, 1.0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Gram is exactly symmetric, PSD, and scales exactly in r") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = testing::random_instance(rng, 15, 30);
    const auto design = build_design(inst.basis, inst.samples, inst.v);
    const auto g1 = build_gram(design, 1.0);
    const auto g2 = build_gram(design, 2.0);
    CHECK((g1.D - g1.D.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g2.D - 2.0 * g1.D).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g1.D.minCoeff() >= 0.0);
    CHECK(g1.D.diagonal().minCoeff() > 0.0);
    for (int z = 0; z < 100; ++z) {
      Eigen::VectorXd vec(g1.D.rows());
      for (auto& x : vec) x = normal(rng);
      CHECK(vec.dot(g1.D * vec) >= -1e-12);
    }
  }
}

TEST_CASE("duplicate observations give identical Gram rows") {
  const SampleSet s({0.3, 0.3, 0.6}, DomainMap(0, 1));
  const auto g = build_gram(build_design(WindowBasis(4), s, Eigen::VectorXd::Constant(5, 0.5)), 1.0);
  CHECK((g.D.row(0) - g.D.row(1)).cwiseAbs().maxCoeff() == 0.0);
}
