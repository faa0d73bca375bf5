#include "quantlink/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "quantlink/analog_precoding.hpp"
#include "quantlink/channel.hpp"
#include "quantlink/csv.hpp"
#include "quantlink/digital_precoding.hpp"
#include "quantlink/quantization.hpp"
#include "quantlink/rates.hpp"
#include "quantlink/rng.hpp"

namespace quantlink {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCapSlack = 1e-9;

// One receiver configuration of the sweep: the hybrid receiver at one RF-chain
// count, or the fully-digital receiver.
struct Group {
  ReceiverArchitecture architecture;
  int n_rf_rx;
  std::string static_error;
};

std::vector<Group> build_groups(const ExperimentConfig& config) {
  std::vector<Group> groups;
  for (auto arch : config.architectures) {
    if (arch == ReceiverArchitecture::fully_digital) {
      const int n_rx = config.channel.n_rx_antennas;
      std::string error;
      if (n_rx > config.channel.n_tx_antennas) error = "n_streams exceeds the transmit antenna count";
      groups.push_back({arch, n_rx, error});
      continue;
    }
    for (int n : config.n_rf_rx) {
      std::string error;
      if (n > config.n_rf_tx) error = "n_streams exceeds min(n_rf_tx, n_rf_rx)";
      groups.push_back({arch, n, error});
    }
  }
  return groups;
}

bool needs_svd(SimMethod m) {
  return m == SimMethod::aqnm_svd || m == SimMethod::hybrid || m == SimMethod::svd_unquantized;
}

class Sweep {
 public:
  explicit Sweep(const ExperimentConfig& config)
      : config_(config),
        groups_(build_groups(config)),
        n_snr_(config.snr_grid_db.size()),
        n_bits_(config.bits_grid.size()),
        n_methods_(config.methods.size()) {}

  std::size_t slots_per_group() const { return n_snr_ * n_bits_ * n_methods_; }
  std::size_t n_slots() const { return groups_.size() * slots_per_group(); }
  std::size_t slot(std::size_t g, std::size_t s, std::size_t b, std::size_t m) const {
    return ((g * n_snr_ + s) * n_bits_ + b) * n_methods_ + m;
  }
  const std::vector<Group>& groups() const { return groups_; }

  // Fills row[slot] for realization `index`; NaN marks an infeasible value.
  void evaluate(std::uint64_t index, std::span<double> row) const {
    std::fill(row.begin(), row.end(), kNaN);
    ClusteredChannelConfig channel = config_.channel;
    channel.seed = split_seed(config_.master_seed, index);
    const ChannelMatrix h = generate_channel(channel);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (!groups_[g].static_error.empty()) continue;
      evaluate_group(h, g, row);
    }
  }

 private:
  void evaluate_group(const ChannelMatrix& h, std::size_t g, std::span<double> row) const {
    const Group& group = groups_[g];
    std::optional<EffectiveChannel> eff;
    if (group.architecture == ReceiverArchitecture::fully_digital) {
      eff.emplace(h.entries());
    } else {
      try {
        const auto pair = alternating_projection(h, config_.n_rf_tx, group.n_rf_rx, config_.projection);
        eff.emplace(effective_channel(h, pair));
      } catch (const DegenerateIterateError&) {
        return;
      }
    }
    const EffectiveChannel& geff = *eff;
    const int ns = static_cast<int>(geff.n_rf_rx());

    std::optional<double> beta;
    try {
      beta = inverse_gram_trace(geff);
    } catch (const RankDeficientChannelError&) {
    }
    const bool any_svd = std::any_of(config_.methods.begin(), config_.methods.end(), needs_svd);

    for (std::size_t s = 0; s < n_snr_; ++s) {
      const double rho = std::pow(10.0, config_.snr_grid_db[s] / 10.0);
      std::optional<DigitalPrecoder> svd;
      if (any_svd) svd = svd_precoder(geff, rho, ns);
      for (std::size_t b = 0; b < n_bits_; ++b) {
        const int bits = config_.bits_grid[b];
        const auto ci_exact = [&]() -> double {
          return beta ? rate_ci_exact(bits, rho / *beta, ns).bits_per_channel_use : kNaN;
        };
        const auto aqnm = [&]() { return rate_aqnm(geff, *svd, rho, lloyd_max(bits).distortion).bits_per_channel_use; };
        for (std::size_t m = 0; m < n_methods_; ++m) {
          const SimMethod method = config_.methods[m];
          double r = kNaN;
          switch (method) {
            case SimMethod::ci_exact: r = ci_exact(); break;
            case SimMethod::ci_fano:
              if (beta) r = rate_ci_fano(bits, rho / *beta, ns).bits_per_channel_use;
              break;
            case SimMethod::ci_onebit:
              if (beta) r = rate_ci_onebit(geff, rho, ns).bits_per_channel_use;
              break;
            case SimMethod::aqnm_svd: r = aqnm(); break;
            case SimMethod::ub_onebit_tight: r = ub_onebit_tight(geff, rho, ns).bits_per_channel_use; break;
            case SimMethod::ub_onebit_loose: r = ub_onebit_loose(h, rho, ns).bits_per_channel_use; break;
            case SimMethod::ub_infinite: r = ub_infinite(geff, rho, ns).bits_per_channel_use; break;
            case SimMethod::hybrid: {
              const double ci = ci_exact();
              const double q = aqnm();
              r = std::isnan(ci) ? q : std::max(ci, q);
              break;
            }
            case SimMethod::svd_unquantized:
              r = rate_aqnm(geff, *svd, rho, DistortionFactor{bits, 0.0}).bits_per_channel_use;
              break;
          }
          row[slot(g, s, b, m)] = enforce_cap(r, method_rate_cap(method, ns, bits));
        }
      }
    }
  }

  static double enforce_cap(double rate, double cap) {
    if (std::isnan(rate) || rate <= cap) return rate;
    if (rate <= cap * (1.0 + kCapSlack)) return cap;
    throw std::logic_error("rate " + std::to_string(rate) + " exceeds its theoretical cap " + std::to_string(cap));
  }

  const ExperimentConfig& config_;
  std::vector<Group> groups_;
  std::size_t n_snr_, n_bits_, n_methods_;
};

int resolve_threads(int requested, int n_realizations) {
  if (requested < 1) throw std::invalid_argument("run_experiment: threads must be >= 1");
  return std::min(requested, n_realizations);
}

}  // namespace

double method_rate_cap(SimMethod method, int n_streams, int bits) {
  switch (method) {
    case SimMethod::ci_exact:
    case SimMethod::ci_fano:
    case SimMethod::aqnm_svd:
    case SimMethod::hybrid:
      return 2.0 * n_streams * bits;
    case SimMethod::ci_onebit:
    case SimMethod::ub_onebit_tight:
    case SimMethod::ub_onebit_loose:
      return 2.0 * n_streams;
    case SimMethod::ub_infinite:
    case SimMethod::svd_unquantized:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const Sweep sweep(config);
  const auto n_real = static_cast<std::size_t>(config.n_realizations);
  const std::size_t width = sweep.n_slots();
  std::vector<double> table(n_real * width, kNaN);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_real) return;
      try {
        sweep.evaluate(i, std::span<double>(table).subspan(i * width, width));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_real);
        return;
      }
    }
  };
  const int n_threads = resolve_threads(options.threads, config.n_realizations);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRecord> records;
  const auto& groups = sweep.groups();
  std::vector<double> values;
  values.reserve(n_real);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Group& group = groups[g];
    const bool digital = group.architecture == ReceiverArchitecture::fully_digital;
    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
      for (std::size_t b = 0; b < config.bits_grid.size(); ++b) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
          ResultRecord rec;
          rec.experiment = config.experiment;
          rec.snr_db = config.snr_grid_db[s];
          rec.bits = config.bits_grid[b];
          rec.n_rf_rx = group.n_rf_rx;
          rec.method = (digital ? "digital_" : "") + std::string(to_string(config.methods[m]));
          rec.master_seed = config.master_seed;
          rec.power_mw = total_power_mw(config.power, config.channel.n_rx_antennas, group.n_rf_rx, rec.bits,
                                        group.architecture);

          values.clear();
          const std::size_t k = sweep.slot(g, s, b, m);
          for (std::size_t i = 0; i < n_real; ++i) {
            const double v = table[i * width + k];
            if (!std::isnan(v)) values.push_back(v);
          }
          rec.n_realizations = static_cast<int>(values.size());
          if (values.empty()) {
            rec.mean_rate_bpshz = kNaN;
            rec.rate_stderr = kNaN;
            rec.ee_bits_per_joule = kNaN;
            rec.error = group.static_error.empty() ? "no feasible realization" : group.static_error;
          } else {
            const double n = static_cast<double>(values.size());
            const double mean = pairwise_sum(values) / n;
            double se = 0.0;
            if (values.size() > 1) {
              for (double& v : values) v = (v - mean) * (v - mean);
              se = std::sqrt(pairwise_sum(values) / (n - 1.0) / n);
            }
            rec.mean_rate_bpshz = mean;
            rec.rate_stderr = se;
            rec.ee_bits_per_joule = energy_efficiency(mean, config.power.bandwidth_hz, rec.power_mw);
          }
          records.push_back(std::move(rec));
        }
      }
    }
  }
  sort_records(records);
  return records;
}

}  // namespace quantlink
