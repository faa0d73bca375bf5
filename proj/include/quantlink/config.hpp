#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quantlink/analog_precoding.hpp"
#include "quantlink/channel.hpp"
#include "quantlink/power.hpp"

namespace quantlink {

enum class ExperimentKind { rate_vs_snr, rate_vs_bits, rate_vs_nrf, power_rate_tradeoff, ee_vs_bits };

// Rate curves a run can produce. `hybrid` is the per-realization maximum of
// ci_exact and aqnm_svd; `svd_unquantized` is the infinite-resolution
// log-det rate of the SVD/waterfilling precoder.
enum class SimMethod {
  ci_exact,
  ci_fano,
  ci_onebit,
  aqnm_svd,
  ub_onebit_tight,
  ub_onebit_loose,
  ub_infinite,
  hybrid,
  svd_unquantized,
};

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(SimMethod method);
std::string_view to_string(ReceiverArchitecture architecture);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text);
std::optional<SimMethod> parse_sim_method(std::string_view text);
std::optional<ReceiverArchitecture> parse_architecture(std::string_view text);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::rate_vs_snr;
  // Antenna counts and cluster parameters; the seed field is unused, each
  // realization derives its own from master_seed.
  ClusteredChannelConfig channel;
  int n_rf_tx = 8;
  std::vector<int> n_rf_rx;
  std::vector<double> snr_grid_db;
  std::vector<int> bits_grid;
  int n_realizations = 100;
  std::vector<SimMethod> methods;
  std::vector<ReceiverArchitecture> architectures;
  PowerModelParams power;
  AlternatingProjectionOptions projection;
  std::string output_path = "results.csv";
  std::uint64_t master_seed = 1;

  // Throws ConfigError naming the first invalid key.
  void validate() const;
};

// Defaults for one experiment family: the 64x8 system with 8 transmit RF
// chains plus grids shaped after the corresponding rate/energy sweep.
ExperimentConfig default_config(ExperimentKind kind);

// Line-oriented `key = value` document; `#` starts a comment, lists are
// comma separated. Omitted keys take the defaults of the selected experiment.
// Throws ConfigError (with line number where applicable).
ExperimentConfig parse_config(std::string_view text);

// Reads and parses a file; I/O failures are reported as ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace quantlink
