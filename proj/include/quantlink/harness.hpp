#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "quantlink/config.hpp"

namespace quantlink {

struct ResultRecord {
  ExperimentKind experiment = ExperimentKind::rate_vs_snr;
  double snr_db = 0.0;
  int bits = 0;
  int n_rf_rx = 0;
  std::string method;  // SimMethod name, prefixed "digital_" for the fully-digital receiver
  double mean_rate_bpshz = 0.0;
  double rate_stderr = 0.0;
  double power_mw = 0.0;
  double ee_bits_per_joule = 0.0;
  int n_realizations = 0;  // realizations that contributed to the mean
  std::uint64_t master_seed = 0;
  std::string error;       // non-empty for infeasible grid points (rates are NaN)
};

struct RunOptions {
  int threads = 1;
};

// Largest rate a method can report with n_streams streams of b-bit ADCs
// (2 Ns b for quantized methods, +inf otherwise).
double method_rate_cap(SimMethod method, int n_streams, int bits);

// Averages every requested method over n_realizations channels. Realization i
// uses seed split_seed(master_seed, i). Records come back sorted by
// (snr_db, bits, n_rf_rx, method) and do not depend on `options.threads`.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// Sum in a fixed pairwise tree over the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace quantlink
