#pragma once

#include <span>
#include <string_view>

#include "quantlink/analog_precoding.hpp"
#include "quantlink/channel.hpp"
#include "quantlink/digital_precoding.hpp"
#include "quantlink/quantization.hpp"

namespace quantlink {

enum class RateMethod {
  ci_exact,
  ci_fano,
  ci_onebit,
  aqnm_svd,
  ub_onebit_tight,
  ub_onebit_loose,
  ub_infinite,
};

std::string_view to_string(RateMethod method);

// Rates are in bits per channel use (bps/Hz) over both real dimensions of
// every stream.
struct RateResult {
  double bits_per_channel_use = 0.0;
  RateMethod method = RateMethod::ci_exact;
};

// -p log2 p - (1-p) log2 (1-p), 0 at the end points.
double binary_entropy(double p);

// 1 - binary_entropy(p), accurate when p is close to 1/2.
double binary_entropy_complement(double p);

// I(s; r) in bits for a discrete memoryless channel. Terms with
// Pr(r|s) = 0 contribute nothing.
double discrete_mi(std::span<const double> prior, const TransitionMatrix& transition);

// 2 Ns (1 - H_b(Q(sqrt(SNR_CI)))): binary antipodal signalling per real
// sub-channel after channel inversion.
RateResult rate_ci_onebit(const EffectiveChannel& g, double rho, int n_streams);

// Same expression with SNR_CI replaced by its lower bound rho nu_Ns^2 / Ns.
RateResult rate_ci_onebit_lower_bound(const EffectiveChannel& g, double rho, int n_streams);

// 2 Ns I(s; r) for equiprobable 2^b-PAM and the matched uniform quantizer.
RateResult rate_ci_exact(int bits, double snr_ci, int n_streams);

// Fano lower bound 2 Ns (b - H_b(Pe) - Pe log2(2^b - 1)).
RateResult rate_ci_fano(int bits, double snr_ci, int n_streams);

// Gaussian-input rate under the additive quantization noise model,
// log2|I + (1-eta) (rho/Ns) F^* G^* (I + eta diag{(rho/Ns) G F F^* G^*})^{-1} G F|.
// eta = 0 gives the unquantized log-det rate.
RateResult rate_aqnm(const EffectiveChannel& g, const DigitalPrecoder& f_bb, double rho,
                     const DistortionFactor& eta);

// 2 N_rf_rx (1 - H_b(Q(sqrt(rho nu_1^2 / N_rf_rx)))).
RateResult ub_onebit_tight(const EffectiveChannel& g, double rho, int n_rf_rx);

// As above with nu_1 replaced by sigma_1(H); independent of the analog stage.
RateResult ub_onebit_loose(const ChannelMatrix& h, double rho, int n_rf_rx);

// N_rf_rx log2(1 + rho nu_1^2 / N_rf_rx).
RateResult ub_infinite(const EffectiveChannel& g, double rho, int n_rf_rx);

}  // namespace quantlink
