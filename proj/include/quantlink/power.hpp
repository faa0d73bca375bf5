#pragma once

namespace quantlink {

// Receiver component powers. Units follow the usual datasheet conventions:
// mW for analog blocks, fJ per conversion step for the ADC figure of merit.
struct PowerModelParams {
  double p_lna_mw = 20.0;
  double p_ps_mw = 10.0;
  double p_rf_chain_mw = 40.0;
  double p_bb_mw = 200.0;
  double fom_w_fj = 500.0;
  double f_s_hz = 1e9;
  double bandwidth_hz = 1e9;

  // Throws std::invalid_argument if any field is not positive.
  void validate() const;
};

enum class ReceiverArchitecture {
  hybrid,
  // One RF chain per antenna and no phase-shifter network.
  fully_digital,
};

// Walden model: FOM_W * f_s * 2^b, in mW.
double adc_power_mw(const PowerModelParams& params, int bits);

// N_r P_LNA + N_rf (N_r P_PS + P_RF + 2 P_ADC) + P_BB, in mW.
// fully_digital requires n_rf_rx == n_rx and drops the P_PS term.
double total_power_mw(const PowerModelParams& params, int n_rx, int n_rf_rx, int bits,
                      ReceiverArchitecture architecture = ReceiverArchitecture::hybrid);

// R W / P_tot in bits per Joule.
double energy_efficiency(double rate_bpshz, double bandwidth_hz, double p_tot_mw);

}  // namespace quantlink
