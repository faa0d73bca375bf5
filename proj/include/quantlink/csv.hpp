#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "quantlink/harness.hpp"

namespace quantlink {

inline constexpr std::string_view kCsvHeader =
    "experiment,snr_db,bits,n_rf_rx,method,mean_rate_bpshz,rate_stderr,power_mw,"
    "ee_bits_per_joule,n_realizations,master_seed";

// Orders records by (snr_db, bits, n_rf_rx, method).
void sort_records(std::vector<ResultRecord>& records);

// Writes the header and one row per record in the given order. Reals use
// 10 significant digits; NaN is written as "nan".
void write_csv(std::ostream& out, std::span<const ResultRecord> records);

// Sorts and writes to `path`. Throws std::invalid_argument when records mix
// experiment tags and std::runtime_error (naming the path) on I/O failure.
void emit_csv(const std::filesystem::path& path, std::vector<ResultRecord> records);

}  // namespace quantlink
