// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "core/common.hpp"
#include "core/samplers.hpp"

using qfb::Family;
using qfb::SeededStream;
using qfb::SubgaussianSpec;

TEST_CASE("splitmix64 reproduces the reference sequence") {
  // First outputs of the published splitmix64 algorithm from state 0.
  qfb::SplitMix64 eng(0);
  CHECK(eng() == 0xE220A8397B1DCDAFull);
  CHECK(eng() == 0x6E789E6AA1B965F4ull);
  CHECK(eng() == 0x06C45D188009454Full);
  CHECK(eng() == 0xF88BB8A8724C81ECull);
}

TEST_CASE("mix64 applies the splitmix finalizer") {
  CHECK(qfb::mix64(1) == 0x5692161D100B05E5ull);
  CHECK(qfb::mix64(0) == 0);
  CHECK(qfb::mix64(1) != qfb::mix64(2));
}

TEST_CASE("equal stream coordinates give equal engines") {
  SeededStream a{42, 7};
  SeededStream b{42, 7};
  auto ea = a.engine();
  auto eb = b.engine();
  for (int i = 0; i < 16; ++i) CHECK(ea() == eb());

  auto shifted = SeededStream{42, 8}.engine();
  auto other = SeededStream{43, 7}.engine();
  auto first = SeededStream{42, 7}.engine();
  CHECK(first() != shifted());
  CHECK(SeededStream{42, 7}.engine()() != other());
}

TEST_CASE("family names round-trip and reject unknowns") {
  CHECK(qfb::family_from_string("gaussian") == Family::gaussian);
  CHECK(qfb::family_from_string("rademacher") == Family::rademacher);
  CHECK(qfb::family_from_string("uniform") == Family::uniform_symmetric);
  for (Family f :
       {Family::gaussian, Family::rademacher, Family::uniform_symmetric})
    CHECK(qfb::family_from_string(qfb::to_string(f)) == f);
  CHECK_THROWS_AS(qfb::family_from_string("cauchy"), qfb::input_error);
  CHECK_THROWS_AS(qfb::family_from_string(""), qfb::input_error);
}

TEST_CASE("declared proxies per family") {
  CHECK(qfb::declared_sigma_for(Family::gaussian, 2.0) == 2.0);
  CHECK(qfb::declared_sigma_for(Family::rademacher, 2.0) == 2.0);
  CHECK(qfb::declared_sigma_for(Family::uniform_symmetric, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(qfb::declared_sigma_for(Family::gaussian, 0.0) == 0.0);
}

TEST_CASE("spec construction validates dimension, scale, and mean") {
  CHECK_THROWS_AS(SubgaussianSpec::make(Family::gaussian, 0, 1.0), qfb::input_error);
  CHECK_THROWS_AS(SubgaussianSpec::make(Family::gaussian, 2, -1.0), qfb::input_error);
  Eigen::VectorXd mu(3);
  mu << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(SubgaussianSpec::make(Family::gaussian, 2, 1.0, mu),
                  qfb::input_error);
  const auto spec = SubgaussianSpec::make(Family::uniform_symmetric, 3, 2.0, mu);
  CHECK(spec.declared_sigma == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(spec.has_mean());
}

TEST_CASE("sampling is deterministic in the stream coordinates") {
  const auto spec = SubgaussianSpec::make(Family::gaussian, 5, 1.3);
  const Eigen::VectorXd a = qfb::sample_vector(spec, {9, 4});
  const Eigen::VectorXd b = qfb::sample_vector(spec, {9, 4});
  const Eigen::VectorXd c = qfb::sample_vector(spec, {9, 5});
  CHECK((a.array() == b.array()).all());
  CHECK(!(a.array() == c.array()).all());
}

TEST_CASE("rademacher draws live on the scaled sign lattice") {
  const auto spec = SubgaussianSpec::make(Family::rademacher, 8, 0.5);
  double sum = 0.0;
  for (std::uint64_t j = 0; j < 2000; ++j) {
    const Eigen::VectorXd x = qfb::sample_vector(spec, {1234, j});
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      CHECK(std::abs(x[i]) == 0.5);
      sum += x[i];
    }
  }
  // 16000 signed draws of magnitude 0.5: mean is 0 within 5 standard errors.
  CHECK(std::abs(sum / 16000.0) < 5.0 * 0.5 / std::sqrt(16000.0));
}

TEST_CASE("uniform draws stay inside the box and match the declared variance") {
  const double scale = 2.0;
  const auto spec = SubgaussianSpec::make(Family::uniform_symmetric, 4, scale);
  double ss = 0.0;
  const std::uint64_t n = 20000;
  for (std::uint64_t j = 0; j < n; ++j) {
    const Eigen::VectorXd x = qfb::sample_vector(spec, {777, j});
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      CHECK(std::abs(x[i]) <= scale);
      ss += x[i] * x[i];
    }
  }
  const double var = ss / (4.0 * static_cast<double>(n));
  const double expect = scale * scale / 3.0;
  CHECK(var == doctest::Approx(expect).epsilon(0.03));
  CHECK(var <= spec.declared_sigma * spec.declared_sigma * 1.03);
}

TEST_CASE("gaussian draws match the declared second moment") {
  const auto spec = SubgaussianSpec::make(Family::gaussian, 4, 1.5);
  double ss = 0.0;
  const std::uint64_t n = 20000;
  for (std::uint64_t j = 0; j < n; ++j)
    ss += qfb::sample_vector(spec, {4242, j}).squaredNorm();
  const double var = ss / (4.0 * static_cast<double>(n));
  CHECK(var == doctest::Approx(2.25).epsilon(0.05));
}

TEST_CASE("a supplied mean shifts every draw") {
  Eigen::VectorXd mu(2);
  mu << 10.0, -3.0;
  const auto spec = SubgaussianSpec::make(Family::rademacher, 2, 1.0, mu);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  const std::uint64_t n = 4000;
  for (std::uint64_t j = 0; j < n; ++j) mean += qfb::sample_vector(spec, {5, j});
  mean /= static_cast<double>(n);
  CHECK(mean[0] == doctest::Approx(10.0).epsilon(0.02));
  CHECK(mean[1] == doctest::Approx(-3.0).epsilon(0.05));
}

TEST_CASE("zero scale collapses every family to its mean") {
  for (Family f :
       {Family::gaussian, Family::rademacher, Family::uniform_symmetric}) {
    const auto spec = SubgaussianSpec::make(f, 3, 0.0);
    const Eigen::VectorXd x = qfb::sample_vector(spec, {1, 0});
    CHECK(x.norm() == 0.0);
  }
}

TEST_CASE("every family certifies its declared directional mgf") {
  // E exp(a . x) <= exp(|a|^2 sigma^2 / 2) for each declared proxy, checked
  // empirically with a generous sampling allowance.
  Eigen::VectorXd a(3);
  a << 0.8, -0.5, 1.1;
  for (Family f :
       {Family::gaussian, Family::rademacher, Family::uniform_symmetric}) {
    const auto spec = SubgaussianSpec::make(f, 3, 1.0);
    const std::uint64_t n = 200000;
    double sum = 0.0, sq = 0.0;
    for (std::uint64_t j = 0; j < n; ++j) {
      const double v = std::exp(a.dot(qfb::sample_vector(spec, {909, j})));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var =
        std::max(0.0, (sq - static_cast<double>(n) * mean * mean) /
                          (static_cast<double>(n) - 1.0));
    const double se = std::sqrt(var / static_cast<double>(n));
    const double cap =
        std::exp(0.5 * a.squaredNorm() * spec.declared_sigma * spec.declared_sigma);
    CHECK(mean <= cap + 4.0 * se);
  }
}

TEST_CASE("martingale spec derives variance and increment budgets") {
  Eigen::MatrixXd cols(3, 2);
  cols << 1.0, 0.0, 0.0, 2.0, 0.0, 0.0;
  const auto spec = qfb::MartingaleSpec::make(cols, false);
  CHECK(spec.v_bound == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(spec.b_bound == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(qfb::MartingaleSpec::make(Eigen::MatrixXd(0, 0), false),
                  qfb::input_error);
}

TEST_CASE("martingale draws respect the gain envelope") {
  const auto plain =
      qfb::MartingaleSpec::make(Eigen::MatrixXd::Identity(10, 10), false);
  const auto gained =
      qfb::MartingaleSpec::make(Eigen::MatrixXd::Identity(10, 10), true);
  for (std::uint64_t j = 0; j < 500; ++j) {
    const auto p = qfb::sample_martingale_sum(plain, {31, j});
    // Unit gains on orthonormal increments pin the squared norm.
    CHECK(p.norm * p.norm == doctest::Approx(10.0).epsilon(1e-12));
    const auto g = qfb::sample_martingale_sum(gained, {31, j});
    CHECK(g.norm <= p.norm + 1e-12);
  }
}

TEST_CASE("martingale sums are centered") {
  Eigen::MatrixXd cols(4, 6);
  cols.setRandom();
  for (bool adapted : {false, true}) {
    const auto spec = qfb::MartingaleSpec::make(cols, adapted);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
    const std::uint64_t n = 20000;
    for (std::uint64_t j = 0; j < n; ++j)
      mean += qfb::sample_martingale_sum(spec, {606, j}).sum;
    mean /= static_cast<double>(n);
    // Each coordinate is an average of n bounded increments.
    CHECK(mean.norm() < 5.0 * spec.b_bound * 2.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("no-gain second moment matches the variance budget") {
  Eigen::MatrixXd cols(5, 8);
  cols.setRandom();
  const auto spec = qfb::MartingaleSpec::make(cols, false);
  const std::uint64_t n = 20000;
  double sum = 0.0, sq = 0.0;
  for (std::uint64_t j = 0; j < n; ++j) {
    const double s2 = std::pow(qfb::sample_martingale_sum(spec, {808, j}).norm, 2);
    sum += s2;
    sq += s2 * s2;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(
      0.0, (sq - static_cast<double>(n) * mean * mean) / (static_cast<double>(n) - 1.0));
  const double se = std::sqrt(var / static_cast<double>(n));
  CHECK(std::abs(mean - spec.v_bound) <= 3.0 * se + 1e-9);
}
