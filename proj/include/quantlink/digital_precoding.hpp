#pragma once

#include <optional>
#include <span>
#include <vector>

#include "quantlink/analog_precoding.hpp"
#include "quantlink/types.hpp"

namespace quantlink {

enum class PrecoderKind { channel_inversion, svd_waterfill };

struct DigitalPrecoder {
  CMatrix f_bb;  // n_rf_tx x n_streams
  PrecoderKind method = PrecoderKind::channel_inversion;
  std::optional<double> beta;                // channel inversion only
  std::optional<std::vector<double>> power_alloc;  // SVD + waterfilling only

  Eigen::Index n_streams() const noexcept { return f_bb.cols(); }
};

// G G^* is declared singular above this condition number.
inline constexpr double kMaxGramCondition = 1e12;

// beta = tr{(G G^*)^{-1}}. Throws RankDeficientChannelError when G G^* is
// singular (fewer independent receive streams than n_rf_rx).
double inverse_gram_trace(const EffectiveChannel& g);

// eta(G) = (sum_i 1/nu_i^2)^{-1}, from the cached singular values.
double harmonic_gain(const EffectiveChannel& g);

// F_BB = sqrt(Ns / beta) G^* (G G^*)^{-1}, with Ns = n_rf_rx.
DigitalPrecoder channel_inversion_precoder(const EffectiveChannel& g);

// Per-sub-channel SNR after channel inversion, rho / tr{(G G^*)^{-1}}.
double snr_ci(const EffectiveChannel& g, double rho);

// p_i = max(0, mu - 1/g_i) with sum p_i = total_power. Exact: the water level
// is solved in closed form for each candidate active-set size.
std::vector<double> waterfill(std::span<const double> gains, double total_power);

// F_BB = V_s diag(sqrt(p)), V_s the leading right singular vectors of G and p
// the waterfilling allocation over gains rho * nu_i^2 / Ns with budget Ns.
DigitalPrecoder svd_precoder(const EffectiveChannel& g, double rho, int n_streams);

}  // namespace quantlink
