#include "quantlink/digital_precoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quantlink {

namespace {

// Inverse of G G^* after checking it is well conditioned.
CMatrix inverse_gram(const EffectiveChannel& g) {
  const auto n_streams = g.n_rf_rx();
  const RVector& nu = g.singular_values();
  const auto rank_dim = nu.size();
  if (rank_dim < n_streams) {
    throw RankDeficientChannelError("channel inversion needs n_rf_tx >= n_rf_rx; use at most " +
                                    std::to_string(rank_dim) + " streams");
  }
  const double nu_min = nu(n_streams - 1);
  if (!(nu_min > 0.0) || (nu(0) * nu(0)) / (nu_min * nu_min) > kMaxGramCondition) {
    Eigen::Index usable = 0;
    while (usable < n_streams && nu(usable) > 0.0 && (nu(0) * nu(0)) / (nu(usable) * nu(usable)) <= kMaxGramCondition)
      ++usable;
    throw RankDeficientChannelError("G G^* is singular to working precision; use at most " +
                                    std::to_string(usable) + " streams");
  }
  const CMatrix gram = g.matrix() * g.matrix().adjoint();
  return gram.llt().solve(CMatrix::Identity(n_streams, n_streams));
}

}  // namespace

double inverse_gram_trace(const EffectiveChannel& g) { return inverse_gram(g).trace().real(); }

double harmonic_gain(const EffectiveChannel& g) {
  const RVector& nu = g.singular_values();
  if (nu.size() < g.n_rf_rx()) throw RankDeficientChannelError("harmonic_gain: G has fewer singular values than rows");
  double inv_sum = 0.0;
  for (Eigen::Index i = 0; i < g.n_rf_rx(); ++i) inv_sum += 1.0 / (nu(i) * nu(i));
  return 1.0 / inv_sum;
}

DigitalPrecoder channel_inversion_precoder(const EffectiveChannel& g) {
  const CMatrix inv = inverse_gram(g);
  const double beta = inv.trace().real();
  const double n_streams = static_cast<double>(g.n_rf_rx());
  DigitalPrecoder out;
  out.f_bb = std::sqrt(n_streams / beta) * (g.matrix().adjoint() * inv);
  out.method = PrecoderKind::channel_inversion;
  out.beta = beta;
  return out;
}

double snr_ci(const EffectiveChannel& g, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("snr_ci: rho must be nonnegative");
  return rho / inverse_gram_trace(g);
}

std::vector<double> waterfill(std::span<const double> gains, double total_power) {
  if (gains.empty()) throw std::invalid_argument("waterfill: empty gain vector");
  if (!(total_power > 0.0) || !std::isfinite(total_power))
    throw std::invalid_argument("waterfill: total power must be positive");
  for (double g : gains)
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("waterfill: gains must be positive");

  const std::size_t n = gains.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

  // Largest active set whose weakest member still gets positive power.
  std::size_t active = 1;
  double level = total_power + 1.0 / gains[order[0]];
  double inv_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    inv_sum += 1.0 / gains[order[k - 1]];
    const double mu = (total_power + inv_sum) / static_cast<double>(k);
    if (mu - 1.0 / gains[order[k - 1]] > 0.0) {
      active = k;
      level = mu;
    } else {
      break;
    }
  }

  std::vector<double> power(n, 0.0);
  for (std::size_t k = 0; k < active; ++k) power[order[k]] = level - 1.0 / gains[order[k]];
  return power;
}

DigitalPrecoder svd_precoder(const EffectiveChannel& g, double rho, int n_streams) {
  if (!(rho > 0.0)) throw std::invalid_argument("svd_precoder: rho must be positive");
  const RVector& nu = g.singular_values();
  if (n_streams < 1 || n_streams > nu.size() || !(nu(n_streams - 1) > 0.0))
    throw std::invalid_argument("svd_precoder: n_streams exceeds the rank of G");

  std::vector<double> gains(static_cast<std::size_t>(n_streams));
  for (int i = 0; i < n_streams; ++i) gains[i] = rho * nu(i) * nu(i) / n_streams;
  std::vector<double> power = waterfill(gains, static_cast<double>(n_streams));

  const SvdResult svd = svd_of(g.matrix());
  RVector amplitude(n_streams);
  for (int i = 0; i < n_streams; ++i) amplitude(i) = std::sqrt(power[i]);

  DigitalPrecoder out;
  out.f_bb = svd.v.leftCols(n_streams) * amplitude.asDiagonal();
  out.method = PrecoderKind::svd_waterfill;
  out.power_alloc = std::move(power);
  return out;
}

}  // namespace quantlink
