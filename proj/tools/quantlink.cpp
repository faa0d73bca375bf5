#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quantlink/channel.hpp"
#include "quantlink/config.hpp"
#include "quantlink/csv.hpp"
#include "quantlink/harness.hpp"
#include "quantlink/quantization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void print_summary(const quantlink::ExperimentConfig& c) {
  std::cout << "experiment     " << quantlink::to_string(c.experiment) << '\n'
            << "system         " << c.channel.n_tx_antennas << "x" << c.channel.n_rx_antennas << ", n_rf_tx "
            << c.n_rf_tx << '\n'
            << "channel        " << c.channel.n_clusters << " clusters x " << c.channel.n_rays_per_cluster
            << " rays, spread " << c.channel.angle_spread_deg << " deg\n"
            << "grid           " << c.snr_grid_db.size() << " snr x " << c.bits_grid.size() << " bits x "
            << c.n_rf_rx.size() << " n_rf_rx\n"
            << "methods        ";
  for (std::size_t i = 0; i < c.methods.size(); ++i) std::cout << (i ? "," : "") << quantlink::to_string(c.methods[i]);
  std::cout << "\narchitectures  ";
  for (std::size_t i = 0; i < c.architectures.size(); ++i)
    std::cout << (i ? "," : "") << quantlink::to_string(c.architectures[i]);
  std::cout << "\nrealizations   " << c.n_realizations << "\nmaster_seed    " << c.master_seed << "\noutput_path    "
            << c.output_path << '\n';
}

void print_quantizer_tables() {
  for (int b = quantlink::kMinBits; b <= quantlink::kMaxBits; ++b) {
    const auto& q = quantlink::lloyd_max(b);
    std::printf("b=%d eta=%.12g hi_res=%.12g\n  levels:", b, q.distortion.eta, quantlink::high_resolution_distortion(b));
    for (double l : q.spec.levels) std::printf(" %.9g", l);
    std::printf("\n  thresholds:");
    for (double t : q.spec.thresholds) std::printf(" %.9g", t);
    std::printf("\n");
  }
}

int threads_from_env() {
  const char* value = std::getenv("QUANTLINK_THREADS");
  if (value == nullptr || *value == '\0') return 1;
  int n = 0;
  const char* end = value + std::strlen(value);
  const auto [ptr, ec] = std::from_chars(value, end, n);
  if (ec != std::errc() || ptr != end || n < 1)
    throw quantlink::ConfigError(std::string("QUANTLINK_THREADS must be a positive integer, got '") + value + "'");
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo rate and energy-efficiency sweeps for quantized hybrid MIMO links"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  auto* run = app.add_subcommand("run", "run an experiment and write its CSV");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_path, "output CSV (overrides output_path)");
  run->add_option("--seed", seed, "master seed (overrides master_seed)");
  run->add_option("--threads", threads, "worker threads (default: $QUANTLINK_THREADS, else 1)")
      ->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and validate a config file");
  validate->add_option("--config", validate_path, "config file")->required();

  bool quantizers = false;
  auto* tables = app.add_subcommand("tables", "print reference tables");
  tables->add_flag("--quantizers", quantizers, "Lloyd-Max levels and distortion factors for b=1..8");

  std::optional<std::string> channel_config;
  std::uint64_t channel_seed = 0;
  std::optional<std::string> channel_out;
  auto* channel = app.add_subcommand("channel", "dump one channel realization as text");
  channel->add_option("--config", channel_config, "config file supplying the array and cluster parameters");
  channel->add_option("--seed", channel_seed, "channel seed")->required();
  channel->add_option("--out", channel_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      auto config = quantlink::load_config(config_path);
      if (out_path) config.output_path = *out_path;
      if (seed) config.master_seed = *seed;
      const auto records = quantlink::run_experiment(config, {.threads = threads ? *threads : threads_from_env()});
      quantlink::emit_csv(config.output_path, records);
      std::cerr << "wrote " << records.size() << " records to " << config.output_path << '\n';
    } else if (*validate) {
      print_summary(quantlink::load_config(validate_path));
    } else if (*tables) {
      if (!quantizers) {
        std::cerr << "tables: nothing selected (use --quantizers)\n";
        return kExitConfig;
      }
      print_quantizer_tables();
    } else if (*channel) {
      quantlink::ClusteredChannelConfig cc;
      if (channel_config) cc = quantlink::load_config(*channel_config).channel;
      cc.seed = channel_seed;
      const auto h = quantlink::generate_channel(cc);
      if (channel_out) {
        std::ofstream out(*channel_out);
        if (!out) throw std::runtime_error("cannot open '" + *channel_out + "' for writing");
        quantlink::write_matrix_text(out, h.entries());
        if (!out) throw std::runtime_error("error writing '" + *channel_out + "'");
      } else {
        quantlink::write_matrix_text(std::cout, h.entries());
      }
    }
  } catch (const quantlink::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
