// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/bounds.hpp"
#include "core/common.hpp"
#include "core/oracles.hpp"
#include "core/samplers.hpp"
#include "core/spectral.hpp"

using qfb::SpectralSummary;
using qfb::SubgaussianParams;

namespace {

SpectralSummary eig(std::vector<double> rho) {
  return qfb::summary_from_eigenvalues(std::move(rho));
}

SpectralSummary identity_summary(std::size_t d) {
  return eig(std::vector<double>(d, 1.0));
}

}  // namespace

TEST_CASE("h1 at exact points") {
  CHECK(qfb::h1(0.0) == 0.0);
  CHECK(qfb::h1(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(qfb::h1(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(qfb::h1(-0.1), qfb::domain_error);
  CHECK_THROWS_AS(qfb::h1_inverse(-0.1), qfb::domain_error);
}

TEST_CASE("h1 stays accurate where the naive form cancels") {
  // Series: h1(a) = a^2/2 - a^3/2 + O(a^4). At a = 1e-8 the naive
  // evaluation 1 + a - sqrt(1 + 2a) loses all significant digits.
  CHECK(qfb::h1(1e-8) == doctest::Approx(5e-17).epsilon(1e-6));
  CHECK(qfb::h1(1e-150) > 0.0);
}

TEST_CASE("h1 and its inverse round-trip across twelve decades") {
  for (double b = 1e-12; b < 1e6; b *= 3.7) {
    CHECK(qfb::h1(qfb::h1_inverse(b)) == doctest::Approx(b).epsilon(1e-12));
  }
  for (double a = 1e-6; a < 1e6; a *= 2.9) {
    CHECK(qfb::h1_inverse(qfb::h1(a)) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("gaussian bound on the identity in two dimensions") {
  const auto b = qfb::gaussian_quadratic_bound(identity_summary(2), 1.0);
  CHECK(b.epsilon == doctest::Approx(6.82842712474619).epsilon(1e-15));
  CHECK(b.term_trace == 2.0);
  CHECK(b.term_deviation == doctest::Approx(2.0 * std::sqrt(2.0) + 2.0).epsilon(1e-15));
  CHECK(b.term_mean == 0.0);
  CHECK(b.t == 1.0);
}

TEST_CASE("subgaussian bound scales with sigma squared") {
  const auto b = qfb::subgaussian_quadratic_bound(eig({4.0, 1.0}), {0.5, false}, 2.0);
  // 0.25 * (5 + 2 sqrt(34) + 16)
  CHECK(b.epsilon == doctest::Approx(8.16547594742265).epsilon(1e-15));
  const auto unit = qfb::subgaussian_quadratic_bound(eig({4.0, 1.0}), {1.0, false}, 2.0);
  CHECK(b.epsilon == doctest::Approx(0.25 * unit.epsilon).epsilon(1e-15));
}

TEST_CASE("mean contribution enters through the deviation-adjusted factor") {
  auto s = qfb::summary_from_eigenvalues({1.0, 1.0}, 1.0);
  const auto b = qfb::subgaussian_quadratic_bound(s, {1.0, true}, 1.0);
  // r = 1/2, factor = sqrt(3 + 2 sqrt 2) = 1 + sqrt 2
  CHECK(b.term_mean == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(b.epsilon == doctest::Approx(9.242640687119284).epsilon(1e-15));

  const auto centered = qfb::subgaussian_quadratic_bound(s, {1.0, false}, 1.0);
  CHECK(b.epsilon - centered.epsilon == doctest::Approx(b.term_mean).epsilon(1e-12));
}

TEST_CASE("requesting a mean term without a mean is rejected") {
  CHECK_THROWS_AS(
      qfb::subgaussian_quadratic_bound(identity_summary(2), {1.0, true}, 1.0),
      qfb::input_error);
  CHECK_THROWS_AS(qfb::subgaussian_quadratic_bound(identity_summary(2), {-1.0, false}, 1.0),
                  qfb::input_error);
  CHECK_THROWS_AS(qfb::gaussian_quadratic_bound(identity_summary(2), 0.0),
                  qfb::domain_error);
  CHECK_THROWS_AS(qfb::gaussian_quadratic_bound(identity_summary(2), -1.0),
                  qfb::domain_error);
}

TEST_CASE("subgaussian bound at sigma one with no mean equals the gaussian bound") {
  qfb::SplitMix64 eng(97);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> rho(1 + eng() % 8);
    for (auto& r : rho) r = std::exp(4.0 * unif(eng) - 2.0);
    const auto s = qfb::summary_from_eigenvalues(rho);
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.1 * i;
      const auto g = qfb::gaussian_quadratic_bound(s, t);
      const auto sub = qfb::subgaussian_quadratic_bound(s, {1.0, false}, t);
      CHECK(g.epsilon == sub.epsilon);
      CHECK(g.term_trace == sub.term_trace);
      CHECK(g.term_deviation == sub.term_deviation);
      CHECK(g.term_mean == sub.term_mean);
    }
  }
}

TEST_CASE("bound grows with t, sigma, and the spectrum") {
  const auto s = eig({3.0, 1.0, 0.5});
  double prev = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double cur = qfb::subgaussian_quadratic_bound(s, {1.0, false}, t).epsilon;
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(qfb::subgaussian_quadratic_bound(s, {2.0, false}, 1.0).epsilon >
        qfb::subgaussian_quadratic_bound(s, {1.0, false}, 1.0).epsilon);
  CHECK(qfb::subgaussian_quadratic_bound(eig({3.0, 2.0, 0.5}), {1.0, false}, 1.0).epsilon >
        qfb::subgaussian_quadratic_bound(s, {1.0, false}, 1.0).epsilon);
}

TEST_CASE("tail probability inverts the bound") {
  qfb::SplitMix64 eng(131);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> rho(1 + eng() % 6);
    for (auto& r : rho) r = std::exp(6.0 * unif(eng) - 3.0);
    const auto s = qfb::summary_from_eigenvalues(rho);
    const double sigma = 0.1 * std::pow(30.0, unif(eng));
    const double t = 0.01 * std::pow(2000.0, unif(eng));
    const auto b = qfb::subgaussian_quadratic_bound(s, {sigma, false}, t);
    const double p = qfb::tail_probability_at(s, sigma, b.epsilon);
    CHECK(p == doctest::Approx(std::exp(-t)).epsilon(1e-12));
  }
}

TEST_CASE("tail probability at a frozen point") {
  // a = 4 * 25 / 17, h1(a) = 3.3095800849270085,
  // p = exp(-(17 / 32) * h1(a)).
  const double p = qfb::tail_probability_at(eig({4.0, 1.0}), 1.0, 30.0);
  CHECK(p == doctest::Approx(0.17235233809903258).epsilon(1e-14));
}

TEST_CASE("tail probability edge cases") {
  const auto s = eig({4.0, 1.0});
  CHECK(qfb::tail_probability_at(s, 1.0, 5.0) == 1.0);
  CHECK(qfb::tail_probability_at(s, 1.0, 4.0) == 1.0);
  CHECK(qfb::tail_probability_at(s, 0.0, 0.5) == 0.0);
  CHECK(qfb::tail_probability_at(s, 0.0, 0.0) == 1.0);
  CHECK(qfb::tail_probability_at(eig({0.0}), 1.0, 0.5) == 0.0);
  CHECK(qfb::tail_probability_at(qfb::summary_from_eigenvalues({1.0}, 0.0), 1.0, 3.0) ==
        doctest::Approx(qfb::tail_probability_at(eig({1.0}), 1.0, 3.0)));
  CHECK_THROWS_AS(
      qfb::tail_probability_at(qfb::summary_from_eigenvalues({1.0}, 0.5), 1.0, 3.0),
      qfb::domain_error);
  CHECK(qfb::tail_probability_at(s, 1.0, 1e6) < 1e-300);
}

TEST_CASE("tail probability decreases in the threshold") {
  const auto s = eig({2.0, 1.0, 1.0});
  double prev = 1.0;
  for (double epsilon = 4.0; epsilon < 200.0; epsilon *= 1.4) {
    const double p = qfb::tail_probability_at(s, 1.0, epsilon);
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("mgf upper bound at a frozen point and at zero") {
  const auto s = identity_summary(1);
  CHECK(qfb::mgf_upper_bound(s, {1.0, false}, 0.25) ==
        doctest::Approx(std::exp(0.375)).epsilon(1e-15));
  CHECK(qfb::mgf_upper_bound(s, {1.0, false}, 0.0) == 1.0);
}

TEST_CASE("mgf upper bound dominates the exact gaussian mgf") {
  qfb::SplitMix64 eng(151);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> rho(1 + eng() % 5);
    for (auto& r : rho) r = 0.2 + 2.0 * unif(eng);
    const auto s = qfb::summary_from_eigenvalues(rho);
    const double pole = qfb::mgf_domain_limit(s, 1.0);
    for (double u : {0.1, 0.4, 0.7, 0.9}) {
      const double eta = u * pole;
      const double exact = qfb::gaussian_quadratic_mgf(s.rho, eta);
      const double bound = qfb::mgf_upper_bound(s, {1.0, false}, eta);
      CHECK(exact <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("mgf domain limit and pole rejection") {
  CHECK(qfb::mgf_domain_limit(identity_summary(1), 1.0) == 0.5);
  CHECK(qfb::mgf_domain_limit(eig({4.0}), 0.5) == 0.5);
  CHECK(std::isinf(qfb::mgf_domain_limit(eig({0.0}), 1.0)));
  CHECK(std::isinf(qfb::mgf_domain_limit(identity_summary(1), 0.0)));
  CHECK_THROWS_AS(qfb::mgf_upper_bound(identity_summary(1), {1.0, false}, 0.5),
                  qfb::domain_error);
  CHECK_THROWS_AS(qfb::mgf_upper_bound(identity_summary(1), {1.0, false}, -0.1),
                  qfb::domain_error);
}

TEST_CASE("gaussian cgf bound dominates the exact cgf") {
  const std::vector<double> alpha1{1.0};
  const std::vector<double> beta0{0.0};
  CHECK(qfb::gaussian_quadratic_cgf(alpha1, beta0, 0.25) ==
        doctest::Approx(0.34657359027997264).epsilon(1e-15));
  CHECK(qfb::gaussian_cgf_bound(alpha1, beta0, 0.25) ==
        doctest::Approx(0.375).epsilon(1e-15));

  qfb::SplitMix64 eng(177);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 1 + eng() % 3;
    std::vector<double> alpha(d), beta(d);
    double amax = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      alpha[i] = 0.2 + 1.8 * unif(eng);
      beta[i] = 2.0 * unif(eng) - 1.0;
      amax = std::max(amax, alpha[i]);
    }
    const double lambda = unif(eng) * 0.98 / (2.0 * amax);
    const double exact = qfb::gaussian_quadratic_cgf(alpha, beta, lambda);
    const double bound = qfb::gaussian_cgf_bound(alpha, beta, lambda);
    CHECK(exact <= bound * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("gaussian cgf bound validates its domain") {
  const std::vector<double> alpha{1.0, 2.0};
  const std::vector<double> beta{0.0, 0.0};
  CHECK_THROWS_AS(qfb::gaussian_cgf_bound(alpha, beta, 0.25), qfb::domain_error);
  CHECK_THROWS_AS(qfb::gaussian_cgf_bound(alpha, beta, -0.01), qfb::domain_error);
  CHECK_THROWS_AS(qfb::gaussian_cgf_bound({}, {}, 0.1), qfb::input_error);
  const std::vector<double> neg{-1.0};
  const std::vector<double> beta1{0.0};
  CHECK_THROWS_AS(qfb::gaussian_cgf_bound(neg, beta1, 0.1), qfb::input_error);
}

TEST_CASE("weighted chi-square threshold") {
  const std::vector<double> gamma4(4, 1.0);
  CHECK(qfb::chi2_tail_bound(gamma4, 2.0) ==
        doctest::Approx(13.65685424949238).epsilon(1e-15));
  const std::vector<double> gamma1{1.0};
  // 1 + 2 sqrt(t) + 2 t at t = 1
  CHECK(qfb::chi2_tail_bound(gamma1, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("chi-square oracle certifies the scalar threshold grid") {
  const std::vector<double> gamma1{1.0};
  const std::vector<std::pair<double, double>> frozen = {
      // scipy.stats.chi2.sf(threshold, 1)
      {0.5, 0.06463720514637543},
      {1.0, 0.025347318677468325},
      {2.0, 0.005143083531754089},
      {5.0, 8.373052085473699e-05},
  };
  for (const auto& [t, sf] : frozen) {
    const double threshold = qfb::chi2_tail_bound(gamma1, t);
    const double survival = qfb::chi2_survival(threshold, 1);
    CHECK(survival == doctest::Approx(sf).epsilon(1e-12));
    CHECK(survival <= std::exp(-t));
    // erf-based cross-check: P[z^2 > x] = 2 P[z > sqrt(x)]
    CHECK(survival ==
          doctest::Approx(2.0 * qfb::normal_upper_tail(std::sqrt(threshold)))
              .epsilon(1e-12));
  }
}

TEST_CASE("chi-square survival matches frozen references") {
  // scipy.stats.chi2.sf
  CHECK(qfb::chi2_survival(5.0, 1) ==
        doctest::Approx(0.025347318677468325).epsilon(1e-13));
  CHECK(qfb::chi2_survival(122.0, 100) ==
        doctest::Approx(0.06672582081362236).epsilon(1e-13));
  CHECK(qfb::chi2_survival(22.94427190999916, 10) ==
        doctest::Approx(0.010954159598747642).epsilon(1e-13));
  CHECK(qfb::chi2_survival(0.0, 3) == 1.0);
  CHECK_THROWS_AS(qfb::chi2_survival(1.0, 0), qfb::input_error);
}

TEST_CASE("identity thresholds stay inside the chi-square tail budget") {
  const std::vector<double> gamma10(10, 1.0);
  for (double t : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const double threshold = qfb::chi2_tail_bound(gamma10, t);
    CHECK(qfb::chi2_survival(threshold, 10) <= std::exp(-t));
  }
  const std::vector<double> gamma100(100, 1.0);
  const double eps100 = qfb::chi2_tail_bound(gamma100, 1.0);
  CHECK(eps100 == 122.0);
  CHECK(qfb::chi2_survival(eps100, 100) <= std::exp(-1.0));
}

TEST_CASE("bernstein-style levels at frozen points") {
  CHECK(qfb::bernstein_bound(2.0, 1.0, 2.0) ==
        doctest::Approx(4.161760458079524).epsilon(1e-15));
  CHECK(qfb::centered_norm_bound(1.0, 1.0, 2.0) ==
        doctest::Approx(4.0 + 8.0 / 3.0).epsilon(1e-15));
  CHECK(qfb::vector_bernstein_bound(1.0, 1.0, 9.0) ==
        doctest::Approx(21.485281374238568).epsilon(1e-15));
  CHECK(qfb::vector_bernstein_bound(0.0, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(qfb::bernstein_bound(-1.0, 1.0, 1.0), qfb::input_error);
  CHECK_THROWS_AS(qfb::bernstein_bound(1.0, 1.0, 0.0), qfb::domain_error);
}

TEST_CASE("bound comparison against the squared norm-deviation level") {
  const auto s = identity_summary(100);
  const std::vector<double> norms(100, 1.0);
  const auto c = qfb::compare_bounds(s, norms, 25.0);
  CHECK(c.theorem_bound == doctest::Approx(250.0).epsilon(1e-15));
  CHECK(c.bernstein_bound == doctest::Approx(184.75468957064282).epsilon(1e-12));
  CHECK(c.bernstein_bound_sq == doctest::Approx(34134.29531834459).epsilon(1e-12));
  CHECK(c.ratio == doctest::Approx(0.007324012336227839).epsilon(1e-12));

  for (double t : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 25.0, 50.0, 100.0, 1000.0}) {
    const auto row = qfb::compare_bounds(s, norms, t);
    CHECK(row.theorem_bound < row.bernstein_bound_sq);
    CHECK(row.ratio == doctest::Approx(row.theorem_bound / row.bernstein_bound_sq));
  }
}

TEST_CASE("bound comparison on the two-dimensional identity") {
  const auto s = identity_summary(2);
  const std::vector<double> norms{1.0, 1.0};
  const auto c = qfb::compare_bounds(s, norms, 1.0);
  CHECK(c.theorem_bound == doctest::Approx(6.82842712474619).epsilon(1e-15));
  CHECK(c.bernstein_bound ==
        doctest::Approx(std::sqrt(2.0) + 4.0 + 4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("bound comparison rejects inconsistent column norms") {
  const std::vector<double> wrong{1.0, 2.0};
  CHECK_THROWS_AS(qfb::compare_bounds(identity_summary(2), wrong, 1.0),
                  qfb::input_error);
  const std::vector<double> neg{-1.0, 1.0};
  CHECK_THROWS_AS(qfb::compare_bounds(identity_summary(2), neg, 1.0),
                  qfb::input_error);
}
