#include <doctest.h>

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "quantlink/channel.hpp"
#include "quantlink/rng.hpp"

using namespace quantlink;

namespace {
// Mean of ||H||_F^2 / (Nt Nr) over seeds split_seed(42, 0..999), pinned from the first run.
constexpr double kChannelPowerGolden = 1.0155126768580829;
}  // namespace

TEST_CASE("mix64 matches the SplitMix64 reference stream") {
  // First three SplitMix64 outputs from state 0.
  CHECK(split_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(split_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
  CHECK(split_seed(0, 2) == 0x06C45D188009454FULL);
}

TEST_CASE("rng uniform uses the top 53 bits of mt19937_64") {
  std::mt19937_64 reference(123);
  Rng rng(123);
  for (int i = 0; i < 1000; ++i) {
    const auto k = reference() >> 11;
    CHECK(rng.uniform() == (static_cast<double>(k) + 0.5) * 0x1p-53);
  }
}

TEST_CASE("rng transforms have the requested moments") {
  Rng rng(5);
  const int n = 200000;
  double g1 = 0, g2 = 0, l2 = 0, c2 = 0, l_abs = 0;
  const double spread = 0.3;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    g1 += g;
    g2 += g * g;
    const double l = rng.laplace(spread);
    l2 += l * l;
    l_abs += std::abs(l);
    c2 += std::norm(rng.complex_gaussian());
  }
  CHECK(std::abs(g1 / n) < 0.01);
  CHECK(std::abs(g2 / n - 1.0) < 0.01);
  CHECK(std::abs(std::sqrt(l2 / n) - spread) < 0.01 * spread * 2);
  CHECK(std::abs(l_abs / n - spread / std::sqrt(2.0)) < 0.01);
  CHECK(std::abs(c2 / n - 1.0) < 0.01);
}

TEST_CASE("single-path 1x1 channel equals its complex gain") {
  ClusteredChannelConfig cfg{1, 1, 1, 1, 7.5, 7};
  const auto h = generate_channel(cfg);
  REQUIRE(h.n_rx() == 1);
  REQUIRE(h.n_tx() == 1);
  Rng rng(7);
  rng.uniform();
  rng.uniform();
  rng.laplace(1.0);
  rng.laplace(1.0);
  const auto alpha = rng.complex_gaussian();
  CHECK(std::abs(h.entries()(0, 0)) == doctest::Approx(std::abs(alpha)).epsilon(1e-14));
}

TEST_CASE("channel power normalization over 1000 seeds") {
  double acc = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    ClusteredChannelConfig cfg{64, 8, 4, 5, 7.5, split_seed(42, static_cast<std::uint64_t>(i))};
    acc += generate_channel(cfg).entries().squaredNorm() / (64.0 * 8.0);
  }
  const double mean = acc / n;
  MESSAGE("mean ||H||_F^2 / (Nt Nr) = " << std::setprecision(17) << mean);
  CHECK(mean >= 0.95);
  CHECK(mean <= 1.05);
  CHECK(mean == doctest::Approx(kChannelPowerGolden).epsilon(1e-12));
}

TEST_CASE("identical configs give identical channels") {
  ClusteredChannelConfig cfg;
  cfg.seed = 99;
  const auto a = generate_channel(cfg);
  const auto b = generate_channel(cfg);
  CHECK((a.entries().array() == b.entries().array()).all());
  cfg.seed = 100;
  CHECK(!(generate_channel(cfg).entries().array() == a.entries().array()).all());
}

TEST_CASE("channel config validation") {
  ClusteredChannelConfig cfg;
  cfg.n_clusters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.angle_spread_deg = 0.0;
  CHECK_THROWS_AS(generate_channel(cfg), std::invalid_argument);
  cfg = {};
  cfg.n_tx_antennas = -1;
  CHECK_THROWS_AS(generate_channel(cfg), std::invalid_argument);
}

TEST_CASE("ula response has unit norm and the expected phase progression") {
  const auto a = ula_response(16, 0.4);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 0; n < 16; ++n) {
    const Complex expected = std::polar(0.25, M_PI * n * std::sin(0.4));
    CHECK(std::abs(a(n) - expected) < 1e-14);
  }
}

TEST_CASE("svd of identity and diagonal matrices") {
  const auto id = svd_of(CMatrix::Identity(2, 2));
  CHECK(id.sigma(0) == doctest::Approx(1.0));
  CHECK(id.sigma(1) == doctest::Approx(1.0));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto s = svd_of(d);
  CHECK(s.sigma(0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(s.sigma(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(std::abs(s.u(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(s.v(1, 1)) - 1.0) < 1e-15);
  CHECK(std::abs(s.u(0, 1)) < 1e-15);
}

TEST_CASE("svd reconstructs random complex matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix m(4, 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = rng.complex_gaussian();
    for (bool full : {false, true}) {
      const auto s = svd_of(m, full);
      const auto k = s.sigma.size();
      const CMatrix rebuilt = s.u.leftCols(k) * s.sigma.cast<Complex>().asDiagonal() * s.v.leftCols(k).adjoint();
      CHECK((rebuilt - m).norm() / m.norm() <= 1e-10);
      CHECK((s.u.adjoint() * s.u - CMatrix::Identity(s.u.cols(), s.u.cols())).norm() <= 1e-10);
      CHECK((s.v.adjoint() * s.v - CMatrix::Identity(s.v.cols(), s.v.cols())).norm() <= 1e-10);
      for (Eigen::Index i = 1; i < k; ++i) CHECK(s.sigma(i - 1) >= s.sigma(i));
      CHECK(s.sigma.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("svd rejects non-finite input") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(svd_of(m), std::invalid_argument);
  m(0, 1) = Complex(0.0, INFINITY);
  CHECK_THROWS_AS(ChannelMatrix{m}, std::invalid_argument);
}

TEST_CASE("channel singular values match its entries") {
  ClusteredChannelConfig cfg;
  cfg.seed = 3;
  const auto h = generate_channel(cfg);
  const auto s = svd_of(h.entries());
  REQUIRE(h.singular_values().size() == 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    CHECK(std::abs(h.singular_values()(i) - s.sigma(i)) <= 1e-10 * h.max_singular_value());
    CHECK(h.max_singular_value() >= h.singular_values()(i));
  }
}

TEST_CASE("matrix text dump round-trips bit-exactly") {
  ClusteredChannelConfig cfg{6, 3, 2, 2, 7.5, 17};
  const auto h = generate_channel(cfg);
  std::stringstream ss;
  write_matrix_text(ss, h.entries());
  const std::string text = ss.str();
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 3);
  CHECK(text.find('j') != std::string::npos);
  const CMatrix back = read_matrix_text(ss);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 6);
  CHECK((back.array() == h.entries().array()).all());

  std::stringstream fixed;
  CMatrix one(1, 2);
  one << Complex(1.5, -0.25), Complex(-2.0, 0.0);
  write_matrix_text(fixed, one);
  CHECK(fixed.str() == "1.5-0.25j -2+0j\n");
}
