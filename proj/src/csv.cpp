#include "quantlink/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace quantlink {

namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void sort_records(std::vector<ResultRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return std::tie(a.snr_db, a.bits, a.n_rf_rx, a.method) < std::tie(b.snr_db, b.bits, b.n_rf_rx, b.method);
  });
}

void write_csv(std::ostream& out, std::span<const ResultRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.experiment) << ',' << format_real(r.snr_db) << ',' << r.bits << ',' << r.n_rf_rx << ','
        << r.method << ',' << format_real(r.mean_rate_bpshz) << ',' << format_real(r.rate_stderr) << ','
        << format_real(r.power_mw) << ',' << format_real(r.ee_bits_per_joule) << ',' << r.n_realizations << ','
        << r.master_seed << '\n';
  }
}

void emit_csv(const std::filesystem::path& path, std::vector<ResultRecord> records) {
  if (!records.empty()) {
    const auto tag = records.front().experiment;
    for (const auto& r : records)
      if (r.experiment != tag) throw std::invalid_argument("emit_csv: records mix experiment tags");
  }
  sort_records(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace quantlink
