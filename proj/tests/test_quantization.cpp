#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "quantlink/gaussian.hpp"
#include "quantlink/quantization.hpp"
#include "quantlink/rates.hpp"

using namespace quantlink;

TEST_CASE("normal functions against quadrature") {
  for (double x : {-8.0, -3.0, -1.0, -0.2, 0.0, 0.7, 2.0, 5.0}) {
    CAPTURE(x);
    const double cdf = oracle::cell_mass(-12.0, x);
    CHECK(normal_cdf(x) == doctest::Approx(cdf).epsilon(1e-12));
    CHECK(normal_tail(x) == doctest::Approx(oracle::cell_mass(x, 12.0)).epsilon(1e-12));
  }
  CHECK(normal_tail(1.0) == doctest::Approx(0.15865525393145705141).epsilon(1e-15));
  CHECK(normal_tail(20.0) > 0.0);
  CHECK(normal_interval(-1.0, 2.0) == doctest::Approx(oracle::cell_mass(-1.0, 2.0)).epsilon(1e-12));
  CHECK(normal_interval(1.0, 1.0) == 0.0);
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.9}) CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-13));
}

TEST_CASE("bit range is enforced") {
  CHECK_THROWS_AS(check_bits(0), std::out_of_range);
  CHECK_THROWS_AS(check_bits(9), std::out_of_range);
  CHECK_THROWS_AS(build_transition_matrix(9, 1.0), std::out_of_range);
  CHECK_THROWS_AS(lloyd_max(0), std::out_of_range);
  CHECK_NOTHROW(check_bits(8));
}

TEST_CASE("matched uniform quantizer geometry") {
  for (int b = 1; b <= 8; ++b) {
    const double snr = 4.0;
    const auto q = uniform_pam_quantizer(b, snr);
    const auto m = static_cast<std::size_t>(1) << b;
    REQUIRE(q.levels.size() == m);
    REQUIRE(q.thresholds.size() == m - 1);
    const double delta = std::sqrt(12.0 * snr / (std::ldexp(1.0, 2 * b) - 1.0));
    CHECK(q.stepsize_over_noise == doctest::Approx(delta).epsilon(1e-15));
    double power = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0) CHECK(q.levels[i] - q.levels[i - 1] == doctest::Approx(delta).epsilon(1e-12));
      power += q.levels[i] * q.levels[i] / static_cast<double>(m);
    }
    // Average PAM power equals the sub-channel SNR in noise units.
    CHECK(power == doctest::Approx(snr).epsilon(1e-12));
    for (std::size_t j = 0; j + 1 < m; ++j)
      CHECK(q.thresholds[j] == doctest::Approx(0.5 * (q.levels[j] + q.levels[j + 1])).epsilon(1e-12));
  }
}

TEST_CASE("transition matrices are stochastic and sign symmetric") {
  for (int b = 1; b <= 8; ++b) {
    for (double snr : {1e-6, 0.01, 1.0, 10.0, 1e3, 1e6}) {
      const auto t = build_transition_matrix(b, snr).entries;
      const auto m = t.rows();
      for (Eigen::Index i = 0; i < m; ++i) {
        CHECK(std::abs(t.row(i).sum() - 1.0) <= 1e-12);
        for (Eigen::Index j = 0; j < m; ++j) {
          CHECK(t(i, j) >= 0.0);
          CHECK(t(i, j) <= 1.0);
          CHECK(t(i, j) == t(m - 1 - i, m - 1 - j));
        }
      }
    }
  }
}

TEST_CASE("one-bit transition matrix") {
  for (double snr : {0.1, 1.0, 7.0}) {
    const auto t = build_transition_matrix(1, snr).entries;
    const double q = oracle::cell_mass(std::sqrt(snr), 12.0);
    CHECK(t(0, 0) == doctest::Approx(1.0 - q).epsilon(1e-12));
    CHECK(t(1, 1) == doctest::Approx(1.0 - q).epsilon(1e-12));
    CHECK(t(0, 1) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("two-bit transition row at snr 3") {
  const auto t = build_transition_matrix(2, 3.0).entries;
  // 40-digit reference values.
  CHECK(t(0, 0) == doctest::Approx(0.7807109869595000724748734518815021051033).epsilon(1e-14));
  CHECK(t(0, 1) == doctest::Approx(0.2092206372653267549161087527952671984399).epsilon(1e-14));
  CHECK(t(0, 2) == doctest::Approx(0.01001462018680842232732533616542361464964).epsilon(1e-13));
  CHECK(t(0, 3) == doctest::Approx(0.00005375558836475028169245915780708180715).epsilon(1e-12));
  const double d = std::sqrt(12.0 * 3.0 / 15.0);
  CHECK(t(0, 0) == doctest::Approx(oracle::cell_mass(-12.0, d / 2)).epsilon(1e-12));
  CHECK(t(0, 1) == doctest::Approx(oracle::cell_mass(d / 2, 3 * d / 2)).epsilon(1e-12));
  CHECK(t(0, 2) == doctest::Approx(oracle::cell_mass(3 * d / 2, 5 * d / 2)).epsilon(1e-11));
}

TEST_CASE("two-bit transitions match 1e7-sample Monte Carlo within 3 standard errors") {
  const auto q = uniform_pam_quantizer(2, 3.0);
  const auto t = build_transition_matrix(2, 3.0).entries;
  const auto mc = oracle::simulate_transitions(q, 10'000'000, 2024);
  for (Eigen::Index s = 0; s < 4; ++s) {
    for (Eigen::Index r = 0; r < 4; ++r) {
      const double p = t(s, r);
      const double se = std::sqrt(p * (1.0 - p) / mc.symbol_counts[s]);
      CAPTURE(s);
      CAPTURE(r);
      CHECK(std::abs(mc.frequency(s, r) - p) <= 3.0 * se + 1e-12);
    }
  }
}

TEST_CASE("low SNR transitions lose all information") {
  for (int b = 1; b <= 4; ++b) {
    const auto t = build_transition_matrix(b, 1e-12);
    for (Eigen::Index i = 1; i < t.entries.rows(); ++i)
      CHECK((t.entries.row(i) - t.entries.row(0)).cwiseAbs().maxCoeff() < 1e-5);
    const std::vector<double> prior(static_cast<std::size_t>(t.alphabet_size()), 1.0 / t.alphabet_size());
    CHECK(discrete_mi(prior, t) < 1e-10);
  }
}

TEST_CASE("one-bit Lloyd-Max quantizer") {
  const auto& q = lloyd_max(1);
  const double c = std::sqrt(2.0 / std::numbers::pi);
  REQUIRE(q.spec.levels.size() == 2);
  CHECK(q.spec.levels[0] == doctest::Approx(-c).epsilon(1e-15));
  CHECK(q.spec.levels[1] == doctest::Approx(c).epsilon(1e-15));
  CHECK(q.spec.thresholds[0] == 0.0);
  CHECK(std::abs(q.distortion.eta - (1.0 - 2.0 / std::numbers::pi)) <= 1e-12);
  CHECK(q.spec.family == QuantizerFamily::lloyd_max_gaussian);
}

TEST_CASE("two-bit Lloyd-Max distortion against quadrature") {
  const auto& q = lloyd_max(2);
  const double mse = oracle::quantizer_mse(q.spec.thresholds, q.spec.levels);
  CHECK(q.distortion.eta == doctest::Approx(mse).epsilon(1e-10));
  CHECK(q.distortion.eta == doctest::Approx(0.1174818478293292871241875188).epsilon(1e-12));
  CHECK(q.spec.levels[3] == doctest::Approx(1.510417608499095402387448).epsilon(1e-12));
  CHECK(q.spec.thresholds[2] == doctest::Approx(0.9815988215677937059003265).epsilon(1e-12));
}

TEST_CASE("Lloyd-Max fixed-point conditions") {
  for (int b = 1; b <= 8; ++b) {
    const auto& q = lloyd_max(b);
    const auto& t = q.spec.thresholds;
    const auto& l = q.spec.levels;
    CAPTURE(b);
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(std::abs(t[j] - 0.5 * (l[j] + l[j + 1])) <= 1e-12);
    for (std::size_t k = 0; k < l.size(); ++k) {
      const double lo = k == 0 ? -12.0 : t[k - 1];
      const double hi = k + 1 == l.size() ? 12.0 : t[k];
      const double centroid = oracle::cell_first_moment(lo, hi) / oracle::cell_mass(lo, hi);
      CHECK(std::abs(l[k] - centroid) <= 1e-8);
    }
    for (std::size_t k = 0; k + 1 < l.size(); ++k) CHECK(l[k] < l[k + 1]);
    for (std::size_t k = 0; k < l.size(); ++k) CHECK(l[k] == -l[l.size() - 1 - k]);
    if (b <= 6) CHECK(q.distortion.eta == doctest::Approx(oracle::quantizer_mse(t, l)).epsilon(1e-9));
  }
}

TEST_CASE("distortion factors decrease strictly") {
  for (int b = 2; b <= 8; ++b) CHECK(lloyd_max(b).distortion.eta < lloyd_max(b - 1).distortion.eta);
  for (int b = 1; b <= 8; ++b) {
    CHECK(lloyd_max(b).distortion.bits == b);
    CHECK(lloyd_max(b).distortion.eta > 0.0);
  }
}

TEST_CASE("high-resolution approximation") {
  CHECK(high_resolution_distortion(1) == doctest::Approx(std::numbers::pi * std::sqrt(3.0) / 8.0));
  for (int b = 2; b <= 8; ++b)
    CHECK(high_resolution_distortion(b) == doctest::Approx(high_resolution_distortion(b - 1) / 4.0).epsilon(1e-15));
}

TEST_CASE("Lloyd-Max memoization is thread safe") {
  std::vector<const LloydMaxQuantizer*> seen(16, nullptr);
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < 16; ++i) pool.emplace_back([&seen, i] { seen[i] = &lloyd_max(1 + i % 8); });
  }
  for (int i = 0; i < 16; ++i) CHECK(seen[i] == &lloyd_max(1 + i % 8));
}

TEST_CASE("PAM error probability") {
  CHECK(pam_error_probability(1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pam_error_probability(1, 1.0) == doctest::Approx(0.1586552539314570514).epsilon(1e-15));
  CHECK(pam_error_probability(2, 1e8) < 1e-300);
  CHECK(pam_error_probability(2, 1e4) < 1e-100);
  for (double snr : {0.3, 2.0, 40.0})
    CHECK(pam_error_probability(1, snr) == doctest::Approx(normal_tail(std::sqrt(snr))).epsilon(1e-15));
  const double pe2 = 1.5 * oracle::cell_mass(std::sqrt(9.0 / 15.0), 12.0);
  CHECK(pam_error_probability(2, 3.0) == doctest::Approx(pe2).epsilon(1e-12));
  CHECK_THROWS_AS(pam_error_probability(2, -1.0), std::invalid_argument);
}
