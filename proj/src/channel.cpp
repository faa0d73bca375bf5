#include "quantlink/channel.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quantlink/rng.hpp"

namespace quantlink {

void ClusteredChannelConfig::validate() const {
  if (n_tx_antennas < 1) throw std::invalid_argument("n_tx_antennas must be >= 1");
  if (n_rx_antennas < 1) throw std::invalid_argument("n_rx_antennas must be >= 1");
  if (n_clusters < 1) throw std::invalid_argument("n_clusters must be >= 1");
  if (n_rays_per_cluster < 1) throw std::invalid_argument("n_rays_per_cluster must be >= 1");
  if (!(angle_spread_deg > 0.0) || !std::isfinite(angle_spread_deg))
    throw std::invalid_argument("angle_spread_deg must be positive");
}

SvdResult svd_of(const CMatrix& m, bool full) {
  if (m.size() == 0) throw std::invalid_argument("svd_of: empty matrix");
  if (!m.allFinite()) throw std::invalid_argument("svd_of: non-finite entries");
  const unsigned options = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                                : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<CMatrix> svd(m, options);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

ChannelMatrix::ChannelMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw std::invalid_argument("ChannelMatrix: empty matrix");
  if (!entries_.allFinite()) throw std::invalid_argument("ChannelMatrix: non-finite entries");
  singular_values_ = Eigen::JacobiSVD<CMatrix>(entries_).singularValues();
}

CVector ula_response(int n_antennas, double angle_rad) {
  CVector a(n_antennas);
  const double phase_step = std::numbers::pi * std::sin(angle_rad);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));
  for (int n = 0; n < n_antennas; ++n) a(n) = std::polar(scale, phase_step * n);
  return a;
}

ChannelMatrix generate_channel(const ClusteredChannelConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int n_paths = config.n_clusters * config.n_rays_per_cluster;
  const double spread_rad = config.angle_spread_deg * std::numbers::pi / 180.0;
  const double half_pi = 0.5 * std::numbers::pi;

  CMatrix h = CMatrix::Zero(config.n_rx_antennas, config.n_tx_antennas);
  for (int c = 0; c < config.n_clusters; ++c) {
    const double tx_centre = rng.uniform(-half_pi, half_pi);
    const double rx_centre = rng.uniform(-half_pi, half_pi);
    for (int l = 0; l < config.n_rays_per_cluster; ++l) {
      const double tx_angle = tx_centre + rng.laplace(spread_rad);
      const double rx_angle = rx_centre + rng.laplace(spread_rad);
      const Complex gain = rng.complex_gaussian();
      h.noalias() += gain * ula_response(config.n_rx_antennas, rx_angle) *
                     ula_response(config.n_tx_antennas, tx_angle).adjoint();
    }
  }
  h *= std::sqrt(static_cast<double>(config.n_tx_antennas) * config.n_rx_antennas / n_paths);
  return ChannelMatrix(std::move(h));
}

void write_matrix_text(std::ostream& out, const CMatrix& m) {
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g%+.17gj", m(r, c).real(), m(r, c).imag());
      if (c > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

namespace {

Complex parse_complex_token(const std::string& token) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  double re = 0.0;
  auto [p, ec] = std::from_chars(first, last, re);
  if (ec != std::errc{} || p == last) throw std::runtime_error("bad matrix token '" + token + "'");
  if (*p == '+') ++p;
  double im = 0.0;
  auto [q, ec2] = std::from_chars(p, last, im);
  if (ec2 != std::errc{} || q + 1 != last || *q != 'j')
    throw std::runtime_error("bad matrix token '" + token + "'");
  return {re, im};
}

}  // namespace

CMatrix read_matrix_text(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::vector<Complex> row;
    for (std::string token; tokens >> token;) row.push_back(parse_complex_token(token));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged matrix text");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace quantlink
