#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "quantlink/types.hpp"

namespace quantlink {

struct ClusteredChannelConfig {
  int n_tx_antennas = 64;
  int n_rx_antennas = 8;
  int n_clusters = 4;
  int n_rays_per_cluster = 5;
  double angle_spread_deg = 7.5;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SvdResult {
  CMatrix u;
  RVector sigma;  // nonincreasing
  CMatrix v;      // m = u * diag(sigma) * v^*
};

// Thin SVD by default; `full` requests square U and V.
// Throws std::invalid_argument on non-finite entries.
SvdResult svd_of(const CMatrix& m, bool full = false);

// A channel realization together with its singular values.
class ChannelMatrix {
 public:
  explicit ChannelMatrix(CMatrix entries);

  const CMatrix& entries() const noexcept { return entries_; }
  const RVector& singular_values() const noexcept { return singular_values_; }
  double max_singular_value() const { return singular_values_(0); }
  Eigen::Index n_rx() const noexcept { return entries_.rows(); }
  Eigen::Index n_tx() const noexcept { return entries_.cols(); }

 private:
  CMatrix entries_;
  RVector singular_values_;
};

// Half-wavelength ULA response a(theta)_n = exp(j*pi*n*sin(theta)) / sqrt(N).
CVector ula_response(int n_antennas, double angle_rad);

// Narrowband clustered geometric channel
//
//   H = sqrt(Nt*Nr / (C*L)) * sum_{c,l} alpha_cl * a_rx(theta_cl) * a_tx(phi_cl)^*
//
// with alpha_cl ~ CN(0, 1), cluster centre angles uniform on [-pi/2, pi/2]
// and per-ray Laplacian offsets whose standard deviation is the angle spread.
//
// Random stream order (one Rng seeded with config.seed), for each cluster c:
//   tx centre, rx centre; then for each ray l: tx offset, rx offset, gain.
ChannelMatrix generate_channel(const ClusteredChannelConfig& config);

// Text dump: one matrix row per line, entries as "re+imj" with 17
// significant digits, separated by single spaces.
void write_matrix_text(std::ostream& out, const CMatrix& m);
CMatrix read_matrix_text(std::istream& in);

}  // namespace quantlink
