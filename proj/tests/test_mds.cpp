#include <doctest.h>

#include <cmath>

#include "cosa/error.hpp"
#include "cosa/mds.hpp"
#include "oracles.hpp"

using namespace cosa;

TEST_CASE("stress examples") {
  Eigen::MatrixXd z(2, 1);
  z << 0, 1;
  CHECK(stress(z, DissimilarityMatrix(2, {1.0})) == 0.0);
  CHECK(stress(z, DissimilarityMatrix(2, {3.0})) == 8.0);
  Eigen::MatrixXd shifted = z.array() + 4.0;
  CHECK(stress(shifted, DissimilarityMatrix(2, {3.0})) == 8.0);
  CHECK_THROWS_AS(stress(z, DissimilarityMatrix(3)), Error);
}

TEST_CASE("classical scaling of two points") {
  const auto e = classical_mds(DissimilarityMatrix(2, {2.0}), 1);
  CHECK(std::abs(e.z(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.z(0, 0) == doctest::Approx(-e.z(1, 0)).epsilon(1e-12));
}

TEST_CASE("classical scaling recovers a configuration") {
  Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    const Eigen::MatrixXd z = oracle::random_configuration(rng, 6, 2);
    const auto e = classical_mds(oracle::euclidean(z), 2);
    CHECK(oracle::procrustes_residual(e.z, z) < 1e-8);
    CHECK_FALSE(e.negative_eigenvalues);
  }
}

TEST_CASE("equilateral triangle") {
  const auto e = classical_mds(DissimilarityMatrix(3, {1, 1, 1}), 2);
  const auto d = configuration_distances(e.z);
  for (double v : d.values()) CHECK(std::abs(v - 1.0) < 1e-9);
  CHECK(std::abs(e.z.col(0).sum()) < 1e-12);
}

TEST_CASE("classical scaling flags non-Euclidean input") {
  // spectrum of -1/2 J D^2 J: 18.54, 3.35, 0, -0.278, -4.62
  const DissimilarityMatrix d(5, {5, 1, 1, 5, 1, 3, 1, 2, 3, 3});
  CHECK_FALSE(classical_mds(d, 3).negative_eigenvalues);
  const auto e = classical_mds(d, 4);
  CHECK(e.negative_eigenvalues);
  CHECK(e.z.col(3).isZero());
  CHECK_THROWS_AS(classical_mds(DissimilarityMatrix(3, {1, 1, 1}), 3), Error);
  CHECK_THROWS_AS(classical_mds(DissimilarityMatrix(3), 1), Error);
}

TEST_CASE("vanishing eigenvalues beyond the intrinsic dimension") {
  Rng rng(3);
  const Eigen::MatrixXd z = oracle::random_configuration(rng, 8, 2);
  const auto e = classical_mds(oracle::euclidean(z), 4);
  const double top = e.z.col(0).squaredNorm();
  CHECK(e.z.col(2).squaredNorm() <= 1e-8 * top);
  CHECK(e.z.col(3).squaredNorm() <= 1e-8 * top);
}

TEST_CASE("smacof on exact distances reaches zero stress") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    SmacofOptions opt;
    opt.interc = false;
    const auto e = smacof(oracle::euclidean(oracle::random_configuration(rng, 7, 2)), opt);
    CHECK(e.stress < 1e-10);
    CHECK_FALSE(e.transform.has_value());
  }
}

TEST_CASE("smacof history never increases") {
  const auto res = oracle::mds_suite(5);
  CHECK(res.history_failures == 0);
  CHECK(res.procrustes < 1e-8);
  CHECK(res.exact_stress < 1e-10);
  CHECK(res.min_dhat >= -1e-12);
}

TEST_CASE("interval transform absorbs an additive constant") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    auto d = oracle::euclidean(oracle::random_configuration(rng, 9, 2));
    for (double& v : d.values()) v += 1.5;
    SmacofOptions with, without;
    with.interc = true;
    without.interc = false;
    const auto a = smacof(d, with);
    const auto b = smacof(d, without);
    CHECK(a.stress <= b.stress);
    REQUIRE(a.transform.has_value());
    CHECK(a.transform->beta > 0);
    double lo = INFINITY;
    for (double v : d.values()) lo = std::min(lo, a.transform->alpha + a.transform->beta * v);
    CHECK(lo >= -1e-12);
  }
}

TEST_CASE("smacof output is centred and deterministic") {
  Rng rng(23);
  const auto d = oracle::random_dissimilarities(rng, 10);
  SmacofOptions opt;
  opt.init = SmacofInit::Random;
  opt.seed = 4;
  const auto a = smacof(d, opt);
  const auto b = smacof(d, opt);
  CHECK(a.z == b.z);
  CHECK(a.history == b.history);
  for (Eigen::Index c = 0; c < a.z.cols(); ++c) CHECK(std::abs(a.z.col(c).mean()) < 1e-12);
  CHECK(a.history.front() >= a.history.back());
  CHECK(a.stress == a.history.back());
}
