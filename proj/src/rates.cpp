#include "quantlink/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "quantlink/gaussian.hpp"

namespace quantlink {

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be a finite nonnegative SNR");
}

void check_streams(int n) {
  if (n < 1) throw std::invalid_argument("stream / RF-chain count must be >= 1");
}

// 2 n (1 - H_b(Q(sqrt(snr)))).
double onebit_rate(int n, double snr) {
  return 2.0 * n * binary_entropy_complement(normal_tail(std::sqrt(snr)));
}

}  // namespace

std::string_view to_string(RateMethod method) {
  switch (method) {
    case RateMethod::ci_exact: return "ci_exact";
    case RateMethod::ci_fano: return "ci_fano";
    case RateMethod::ci_onebit: return "ci_onebit";
    case RateMethod::aqnm_svd: return "aqnm_svd";
    case RateMethod::ub_onebit_tight: return "ub_onebit_tight";
    case RateMethod::ub_onebit_loose: return "ub_onebit_loose";
    case RateMethod::ub_infinite: return "ub_infinite";
  }
  return "unknown";
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log(p) + (1.0 - p) * std::log1p(-p)) / std::numbers::ln2;
}

double binary_entropy_complement(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy_complement: p must lie in [0, 1]");
  // With p = (1 - d) / 2: 1 - H_b = ((1+d) ln(1+d) + (1-d) ln(1-d)) / (2 ln 2).
  const double d = 1.0 - 2.0 * p;
  if (std::abs(d) < 0.5) {
    return ((1.0 + d) * std::log1p(d) + (1.0 - d) * std::log1p(-d)) / (2.0 * std::numbers::ln2);
  }
  return 1.0 - binary_entropy(p);
}

double discrete_mi(std::span<const double> prior, const TransitionMatrix& transition) {
  const RMatrix& t = transition.entries;
  const auto n_in = static_cast<Eigen::Index>(prior.size());
  if (t.rows() != n_in) throw std::invalid_argument("discrete_mi: prior length does not match transition rows");
  if (n_in == 0 || t.cols() == 0) throw std::invalid_argument("discrete_mi: empty alphabet");

  double prior_sum = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw std::invalid_argument("discrete_mi: negative prior");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-9) throw std::invalid_argument("discrete_mi: prior must sum to 1");

  std::vector<double> output(static_cast<std::size_t>(t.cols()), 0.0);
  for (Eigen::Index s = 0; s < n_in; ++s)
    for (Eigen::Index r = 0; r < t.cols(); ++r) output[r] += prior[s] * t(s, r);

  double nats = 0.0;
  for (Eigen::Index s = 0; s < n_in; ++s) {
    if (prior[s] == 0.0) continue;
    for (Eigen::Index r = 0; r < t.cols(); ++r) {
      const double p = t(s, r);
      if (p > 0.0) nats += prior[s] * p * std::log(p / output[r]);
    }
  }
  return std::max(0.0, nats / std::numbers::ln2);
}

RateResult rate_ci_onebit(const EffectiveChannel& g, double rho, int n_streams) {
  check_rho(rho);
  if (n_streams != g.n_rf_rx()) throw std::invalid_argument("rate_ci_onebit: channel inversion needs Ns = n_rf_rx");
  return {onebit_rate(n_streams, snr_ci(g, rho)), RateMethod::ci_onebit};
}

RateResult rate_ci_onebit_lower_bound(const EffectiveChannel& g, double rho, int n_streams) {
  check_rho(rho);
  check_streams(n_streams);
  const RVector& nu = g.singular_values();
  if (n_streams > nu.size()) throw std::invalid_argument("rate_ci_onebit_lower_bound: n_streams exceeds rank dimension");
  const double nu_min = nu(n_streams - 1);
  return {onebit_rate(n_streams, rho * nu_min * nu_min / n_streams), RateMethod::ci_onebit};
}

RateResult rate_ci_exact(int bits, double snr_ci, int n_streams) {
  check_bits(bits);
  check_streams(n_streams);
  if (!(snr_ci > 0.0) || !std::isfinite(snr_ci)) throw std::invalid_argument("rate_ci_exact: snr must be positive");
  const TransitionMatrix t = build_transition_matrix(bits, snr_ci);
  const std::vector<double> prior(static_cast<std::size_t>(t.alphabet_size()), 1.0 / t.alphabet_size());
  return {2.0 * n_streams * discrete_mi(prior, t), RateMethod::ci_exact};
}

RateResult rate_ci_fano(int bits, double snr_ci, int n_streams) {
  check_bits(bits);
  check_streams(n_streams);
  if (!(snr_ci >= 0.0)) throw std::invalid_argument("rate_ci_fano: snr must be nonnegative");
  const double pe = pam_error_probability(bits, snr_ci);
  const double per_dim = (bits - 1) + binary_entropy_complement(pe) - pe * std::log2(std::ldexp(1.0, bits) - 1.0);
  return {2.0 * n_streams * per_dim, RateMethod::ci_fano};
}

RateResult rate_aqnm(const EffectiveChannel& g, const DigitalPrecoder& f_bb, double rho,
                     const DistortionFactor& eta) {
  check_rho(rho);
  if (!(eta.eta >= 0.0 && eta.eta < 1.0)) throw std::invalid_argument("rate_aqnm: distortion factor must lie in [0, 1)");
  if (f_bb.f_bb.rows() != g.n_rf_tx()) throw std::invalid_argument("rate_aqnm: precoder rows must equal n_rf_tx");
  const auto n_streams = f_bb.n_streams();
  check_streams(static_cast<int>(n_streams));

  const double scale = rho / static_cast<double>(n_streams);
  const CMatrix a = g.matrix() * f_bb.f_bb;
  // I + eta diag{scale A A^*}: the noise identity sits outside diag{}.
  const RVector distortion = (eta.eta * scale * a.rowwise().squaredNorm().array() + 1.0).matrix();
  const CMatrix weighted = distortion.cwiseInverse().asDiagonal() * a;
  CMatrix m = CMatrix::Identity(n_streams, n_streams) + (1.0 - eta.eta) * scale * (a.adjoint() * weighted);
  m = 0.5 * (m + m.adjoint()).eval();

  const Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw std::logic_error("rate_aqnm: log-det argument is not positive definite");
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n_streams; ++i) log_det += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  return {log_det / std::numbers::ln2, RateMethod::aqnm_svd};
}

RateResult ub_onebit_tight(const EffectiveChannel& g, double rho, int n_rf_rx) {
  check_rho(rho);
  check_streams(n_rf_rx);
  const double nu1 = g.max_singular_value();
  return {onebit_rate(n_rf_rx, rho * nu1 * nu1 / n_rf_rx), RateMethod::ub_onebit_tight};
}

RateResult ub_onebit_loose(const ChannelMatrix& h, double rho, int n_rf_rx) {
  check_rho(rho);
  check_streams(n_rf_rx);
  const double sigma1 = h.max_singular_value();
  return {onebit_rate(n_rf_rx, rho * sigma1 * sigma1 / n_rf_rx), RateMethod::ub_onebit_loose};
}

RateResult ub_infinite(const EffectiveChannel& g, double rho, int n_rf_rx) {
  check_rho(rho);
  check_streams(n_rf_rx);
  const double nu1 = g.max_singular_value();
  return {n_rf_rx * std::log1p(rho * nu1 * nu1 / n_rf_rx) / std::numbers::ln2, RateMethod::ub_infinite};
}

}  // namespace quantlink
