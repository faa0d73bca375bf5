#include "quantlink/power.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quantlink {

namespace {
constexpr double kFemto = 1e-15;
constexpr double kMilliPerUnit = 1e3;
}  // namespace

void PowerModelParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(p_lna_mw, "p_lna_mw");
  positive(p_ps_mw, "p_ps_mw");
  positive(p_rf_chain_mw, "p_rf_chain_mw");
  positive(p_bb_mw, "p_bb_mw");
  positive(fom_w_fj, "fom_w_fj");
  positive(f_s_hz, "f_s_hz");
  positive(bandwidth_hz, "bandwidth_hz");
}

double adc_power_mw(const PowerModelParams& params, int bits) {
  if (bits < 1) throw std::invalid_argument("adc_power_mw: bits must be >= 1");
  return params.fom_w_fj * kFemto * params.f_s_hz * std::ldexp(1.0, bits) * kMilliPerUnit;
}

double total_power_mw(const PowerModelParams& params, int n_rx, int n_rf_rx, int bits,
                      ReceiverArchitecture architecture) {
  if (n_rx < 1) throw std::invalid_argument("total_power_mw: n_rx must be >= 1");
  if (n_rf_rx < 0 || n_rf_rx > n_rx) throw std::invalid_argument("total_power_mw: need 0 <= n_rf_rx <= n_rx");
  const double phase_shifters = architecture == ReceiverArchitecture::hybrid ? n_rx * params.p_ps_mw : 0.0;
  if (architecture == ReceiverArchitecture::fully_digital && n_rf_rx != n_rx)
    throw std::invalid_argument("total_power_mw: a fully-digital receiver has one RF chain per antenna");
  const double per_chain = n_rf_rx > 0 ? phase_shifters + params.p_rf_chain_mw + 2.0 * adc_power_mw(params, bits) : 0.0;
  return n_rx * params.p_lna_mw + n_rf_rx * per_chain + params.p_bb_mw;
}

double energy_efficiency(double rate_bpshz, double bandwidth_hz, double p_tot_mw) {
  if (!(p_tot_mw > 0.0)) throw std::invalid_argument("energy_efficiency: total power must be positive");
  if (!(rate_bpshz >= 0.0)) throw std::invalid_argument("energy_efficiency: rate must be nonnegative");
  return rate_bpshz * bandwidth_hz / (p_tot_mw / kMilliPerUnit);
}

}  // namespace quantlink
