#include "quantlink/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quantlink {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::rate_vs_snr, "rate_vs_snr"},
    {ExperimentKind::rate_vs_bits, "rate_vs_bits"},
    {ExperimentKind::rate_vs_nrf, "rate_vs_nrf"},
    {ExperimentKind::power_rate_tradeoff, "power_rate_tradeoff"},
    {ExperimentKind::ee_vs_bits, "ee_vs_bits"},
};

constexpr std::pair<SimMethod, std::string_view> kMethods[] = {
    {SimMethod::ci_exact, "ci_exact"},
    {SimMethod::ci_fano, "ci_fano"},
    {SimMethod::ci_onebit, "ci_onebit"},
    {SimMethod::aqnm_svd, "aqnm_svd"},
    {SimMethod::ub_onebit_tight, "ub_onebit_tight"},
    {SimMethod::ub_onebit_loose, "ub_onebit_loose"},
    {SimMethod::ub_infinite, "ub_infinite"},
    {SimMethod::hybrid, "hybrid"},
    {SimMethod::svd_unquantized, "svd_unquantized"},
};

constexpr std::pair<ReceiverArchitecture, std::string_view> kArchitectures[] = {
    {ReceiverArchitecture::hybrid, "hybrid"},
    {ReceiverArchitecture::fully_digital, "fully_digital"},
};

template <class E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (const auto& [e, name] : table)
    if (e == value) return name;
  return "unknown";
}

template <class E, std::size_t N>
std::optional<E> lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view text) {
  for (const auto& [e, name] : table)
    if (name == text) return e;
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    items.push_back(trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

template <class T>
T parse_number(std::string_view text, std::string_view key, int line) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(text) + "'", line);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value))
      throw ConfigError("key '" + std::string(key) + "': value must be finite", line);
  }
  return value;
}

template <class T>
std::vector<T> parse_number_list(std::string_view text, std::string_view key, int line) {
  std::vector<T> values;
  for (auto item : split_list(text)) values.push_back(parse_number<T>(item, key, line));
  return values;
}

template <class E, std::size_t N>
std::vector<E> parse_enum_list(const std::pair<E, std::string_view> (&table)[N], std::string_view text,
                               std::string_view key, int line) {
  std::vector<E> values;
  for (auto item : split_list(text)) {
    const auto e = lookup(table, item);
    if (!e) throw ConfigError("key '" + std::string(key) + "': unknown value '" + std::string(item) + "'", line);
    values.push_back(*e);
  }
  return values;
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> v(static_cast<std::size_t>(hi - lo + 1));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

template <class T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, int)>;

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table = [] {
    std::map<std::string_view, Setter> t;
    t["experiment"] = [](ExperimentConfig&, std::string_view, int) {};  // handled before the other keys
    t["n_tx"] = [](ExperimentConfig& c, std::string_view v, int l) { c.channel.n_tx_antennas = parse_number<int>(v, "n_tx", l); };
    t["n_rx"] = [](ExperimentConfig& c, std::string_view v, int l) { c.channel.n_rx_antennas = parse_number<int>(v, "n_rx", l); };
    t["n_rf_tx"] = [](ExperimentConfig& c, std::string_view v, int l) { c.n_rf_tx = parse_number<int>(v, "n_rf_tx", l); };
    t["n_rf_rx"] = [](ExperimentConfig& c, std::string_view v, int l) { c.n_rf_rx = parse_number_list<int>(v, "n_rf_rx", l); };
    t["n_clusters"] = [](ExperimentConfig& c, std::string_view v, int l) { c.channel.n_clusters = parse_number<int>(v, "n_clusters", l); };
    t["n_rays_per_cluster"] = [](ExperimentConfig& c, std::string_view v, int l) {
      c.channel.n_rays_per_cluster = parse_number<int>(v, "n_rays_per_cluster", l);
    };
    t["angle_spread_deg"] = [](ExperimentConfig& c, std::string_view v, int l) {
      c.channel.angle_spread_deg = parse_number<double>(v, "angle_spread_deg", l);
    };
    t["snr_grid_db"] = [](ExperimentConfig& c, std::string_view v, int l) { c.snr_grid_db = parse_number_list<double>(v, "snr_grid_db", l); };
    t["bits_grid"] = [](ExperimentConfig& c, std::string_view v, int l) { c.bits_grid = parse_number_list<int>(v, "bits_grid", l); };
    t["n_realizations"] = [](ExperimentConfig& c, std::string_view v, int l) { c.n_realizations = parse_number<int>(v, "n_realizations", l); };
    t["methods"] = [](ExperimentConfig& c, std::string_view v, int l) { c.methods = parse_enum_list(kMethods, v, "methods", l); };
    t["architectures"] = [](ExperimentConfig& c, std::string_view v, int l) {
      c.architectures = parse_enum_list(kArchitectures, v, "architectures", l);
    };
    t["p_lna_mw"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.p_lna_mw = parse_number<double>(v, "p_lna_mw", l); };
    t["p_ps_mw"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.p_ps_mw = parse_number<double>(v, "p_ps_mw", l); };
    t["p_rf_chain_mw"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.p_rf_chain_mw = parse_number<double>(v, "p_rf_chain_mw", l); };
    t["p_bb_mw"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.p_bb_mw = parse_number<double>(v, "p_bb_mw", l); };
    t["fom_w_fj"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.fom_w_fj = parse_number<double>(v, "fom_w_fj", l); };
    t["f_s_hz"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.f_s_hz = parse_number<double>(v, "f_s_hz", l); };
    t["bandwidth_hz"] = [](ExperimentConfig& c, std::string_view v, int l) { c.power.bandwidth_hz = parse_number<double>(v, "bandwidth_hz", l); };
    t["output_path"] = [](ExperimentConfig& c, std::string_view v, int l) {
      if (v.empty()) throw ConfigError("key 'output_path': value is empty", l);
      c.output_path = std::string(v);
    };
    t["master_seed"] = [](ExperimentConfig& c, std::string_view v, int l) { c.master_seed = parse_number<std::uint64_t>(v, "master_seed", l); };
    t["ap_epsilon"] = [](ExperimentConfig& c, std::string_view v, int l) { c.projection.epsilon = parse_number<double>(v, "ap_epsilon", l); };
    t["ap_max_iter"] = [](ExperimentConfig& c, std::string_view v, int l) { c.projection.max_iter = parse_number<int>(v, "ap_max_iter", l); };
    return t;
  }();
  return table;
}

struct Entry {
  std::string_view key;
  std::string_view value;
  int line;
};

}  // namespace

std::string_view to_string(ExperimentKind kind) { return name_of(kKinds, kind); }
std::string_view to_string(SimMethod method) { return name_of(kMethods, method); }
std::string_view to_string(ReceiverArchitecture architecture) { return name_of(kArchitectures, architecture); }

std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) { return lookup(kKinds, text); }
std::optional<SimMethod> parse_sim_method(std::string_view text) { return lookup(kMethods, text); }
std::optional<ReceiverArchitecture> parse_architecture(std::string_view text) { return lookup(kArchitectures, text); }

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& msg) { throw ConfigError("key '" + key + "': " + msg); };
  if (channel.n_tx_antennas < 1) fail("n_tx", "must be >= 1");
  if (channel.n_rx_antennas < 1) fail("n_rx", "must be >= 1");
  if (channel.n_clusters < 1) fail("n_clusters", "must be >= 1");
  if (channel.n_rays_per_cluster < 1) fail("n_rays_per_cluster", "must be >= 1");
  if (!(channel.angle_spread_deg >= 0.0) || !std::isfinite(channel.angle_spread_deg)) fail("angle_spread_deg", "must be >= 0");
  if (n_rf_tx < 1 || n_rf_tx > channel.n_tx_antennas) fail("n_rf_tx", "must lie in [1, n_tx]");
  if (n_rf_rx.empty()) fail("n_rf_rx", "list is empty");
  for (int n : n_rf_rx)
    if (n < 1 || n > channel.n_rx_antennas) fail("n_rf_rx", "entries must lie in [1, n_rx]");
  if (has_duplicates(n_rf_rx)) fail("n_rf_rx", "duplicate entries");
  if (snr_grid_db.empty()) fail("snr_grid_db", "list is empty");
  for (double s : snr_grid_db)
    if (!std::isfinite(s)) fail("snr_grid_db", "entries must be finite");
  if (has_duplicates(snr_grid_db)) fail("snr_grid_db", "duplicate entries");
  if (bits_grid.empty()) fail("bits_grid", "list is empty");
  for (int b : bits_grid)
    if (b < 1 || b > 8) fail("bits_grid", "entries must lie in [1, 8]");
  if (has_duplicates(bits_grid)) fail("bits_grid", "duplicate entries");
  if (n_realizations < 1) fail("n_realizations", "must be >= 1");
  if (methods.empty()) fail("methods", "list is empty");
  if (has_duplicates(methods)) fail("methods", "duplicate entries");
  if (architectures.empty()) fail("architectures", "list is empty");
  if (has_duplicates(architectures)) fail("architectures", "duplicate entries");
  const std::pair<double, const char*> powers[] = {
      {power.p_lna_mw, "p_lna_mw"}, {power.p_ps_mw, "p_ps_mw"},   {power.p_rf_chain_mw, "p_rf_chain_mw"},
      {power.p_bb_mw, "p_bb_mw"},   {power.fom_w_fj, "fom_w_fj"}, {power.f_s_hz, "f_s_hz"},
      {power.bandwidth_hz, "bandwidth_hz"},
  };
  for (const auto& [v, key] : powers)
    if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive");
  if (!(projection.epsilon > 0.0)) fail("ap_epsilon", "must be positive");
  if (projection.max_iter < 1) fail("ap_max_iter", "must be >= 1");
  if (output_path.empty()) fail("output_path", "must not be empty");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.architectures = {ReceiverArchitecture::hybrid};
  switch (kind) {
    case ExperimentKind::rate_vs_snr:
      for (int s = -20; s <= 20; s += 2) c.snr_grid_db.push_back(s);
      c.bits_grid = {1, 2, 3};
      c.n_rf_rx = {4};
      c.methods = {SimMethod::ci_exact, SimMethod::ci_fano, SimMethod::aqnm_svd, SimMethod::ub_onebit_tight,
                   SimMethod::ub_infinite};
      break;
    case ExperimentKind::rate_vs_bits:
      c.snr_grid_db = {-10.0, 10.0};
      c.bits_grid = int_range(1, 8);
      c.n_rf_rx = {4};
      c.methods = {SimMethod::ci_exact, SimMethod::aqnm_svd, SimMethod::svd_unquantized};
      break;
    case ExperimentKind::rate_vs_nrf:
      c.snr_grid_db = {-10.0, 10.0};
      c.bits_grid = {4};
      c.n_rf_rx = int_range(1, 8);
      c.methods = {SimMethod::ci_exact, SimMethod::aqnm_svd, SimMethod::svd_unquantized};
      c.architectures = {ReceiverArchitecture::hybrid, ReceiverArchitecture::fully_digital};
      break;
    case ExperimentKind::power_rate_tradeoff:
      c.snr_grid_db = {10.0};
      c.bits_grid = int_range(1, 8);
      c.n_rf_rx = {1, 2, 4};
      c.methods = {SimMethod::hybrid};
      c.architectures = {ReceiverArchitecture::hybrid, ReceiverArchitecture::fully_digital};
      break;
    case ExperimentKind::ee_vs_bits:
      c.snr_grid_db = {-10.0, 10.0};
      c.bits_grid = int_range(1, 8);
      c.n_rf_rx = {2};
      c.methods = {SimMethod::ci_exact, SimMethod::aqnm_svd};
      c.architectures = {ReceiverArchitecture::hybrid, ReceiverArchitecture::fully_digital};
      break;
  }
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<Entry> entries;
  std::set<std::string_view> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("malformed line, expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("malformed line, missing key", line_no);
    if (!setters().contains(key)) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    entries.push_back({key, value, line_no});
  }

  ExperimentKind kind = ExperimentKind::rate_vs_snr;
  for (const auto& e : entries) {
    if (e.key != "experiment") continue;
    const auto k = parse_experiment_kind(e.value);
    if (!k) throw ConfigError("key 'experiment': unknown value '" + std::string(e.value) + "'", e.line);
    kind = *k;
  }
  ExperimentConfig config = default_config(kind);
  for (const auto& e : entries) setters().at(e.key)(config, e.value, e.line);
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ConfigError("error reading config file '" + path.string() + "'");
  return parse_config(buffer.str());
}

}  // namespace quantlink
