#include "quantlink/quantization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "quantlink/gaussian.hpp"

namespace quantlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int alphabet_size(int bits) { return 1 << bits; }

// Cell i of a scalar quantizer is (edge(i-1), edge(i)] with infinite outer edges.
double cell_lower(const std::vector<double>& thresholds, std::size_t i) {
  return i == 0 ? -kInf : thresholds[i - 1];
}
double cell_upper(const std::vector<double>& thresholds, std::size_t i) {
  return i == thresholds.size() ? kInf : thresholds[i];
}

struct CellMoments {
  std::vector<double> prob;
  std::vector<double> centroid;
  std::vector<double> d_lower;  // d centroid / d lower edge
  std::vector<double> d_upper;  // d centroid / d upper edge
};

// Probabilities, conditional means and their edge derivatives for a unit
// Gaussian; all closed form.
CellMoments cell_moments(const std::vector<double>& thresholds) {
  const std::size_t n = thresholds.size() + 1;
  CellMoments m;
  m.prob.resize(n);
  m.centroid.resize(n);
  m.d_lower.resize(n);
  m.d_upper.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = cell_lower(thresholds, i);
    const double b = cell_upper(thresholds, i);
    const double pa = normal_pdf(a);
    const double pb = normal_pdf(b);
    const double p = normal_interval(a, b);
    const double c = (pa - pb) / p;
    m.prob[i] = p;
    m.centroid[i] = c;
    m.d_lower[i] = std::isinf(a) ? 0.0 : pa * (c - a) / p;
    m.d_upper[i] = std::isinf(b) ? 0.0 : pb * (b - c) / p;
  }
  return m;
}

// Lloyd map residual: midpoint of neighbouring centroids minus threshold.
std::vector<double> lloyd_residual(const std::vector<double>& thresholds, const CellMoments& m) {
  std::vector<double> r(thresholds.size());
  for (std::size_t j = 0; j < thresholds.size(); ++j)
    r[j] = 0.5 * (m.centroid[j] + m.centroid[j + 1]) - thresholds[j];
  return r;
}

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

void symmetrize(std::vector<double>& t) {
  const std::size_t n = t.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double half = 0.5 * (t[n - 1 - j] - t[j]);
    t[j] = -half;
    t[n - 1 - j] = half;
  }
  if (n % 2 == 1) t[n / 2] = 0.0;
}

// Tridiagonal solve (Thomas); sub[0] and sup[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
  return x;
}

// Newton iteration on the Lloyd fixed-point equations t = T(t), started from
// the companding initialiser.
std::vector<double> solve_lloyd_thresholds(int bits) {
  const int n_levels = alphabet_size(bits);
  std::vector<double> t(static_cast<std::size_t>(n_levels - 1));
  for (int j = 1; j < n_levels; ++j)
    t[j - 1] = std::sqrt(3.0) * normal_quantile(static_cast<double>(j) / n_levels);
  symmetrize(t);

  CellMoments m = cell_moments(t);
  std::vector<double> r = lloyd_residual(t, m);
  const std::size_t n = t.size();
  for (int iter = 0; iter < 100 && max_abs(r) > 1e-15; ++iter) {
    std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0), rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      diag[j] = 0.5 * (m.d_upper[j] + m.d_lower[j + 1]) - 1.0;
      if (j > 0) sub[j] = 0.5 * m.d_lower[j];
      if (j + 1 < n) sup[j] = 0.5 * m.d_upper[j + 1];
      rhs[j] = -r[j];
    }
    const std::vector<double> step = solve_tridiagonal(sub, diag, sup, rhs);

    bool improved = false;
    for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
      std::vector<double> trial(n);
      for (std::size_t j = 0; j < n; ++j) trial[j] = t[j] + scale * step[j];
      symmetrize(trial);
      if (!strictly_increasing(trial)) continue;
      CellMoments trial_m = cell_moments(trial);
      std::vector<double> trial_r = lloyd_residual(trial, trial_m);
      if (max_abs(trial_r) < max_abs(r)) {
        t = std::move(trial);
        m = std::move(trial_m);
        r = std::move(trial_r);
        improved = true;
        break;
      }
    }
    if (!improved) break;  // at the rounding floor
  }
  return t;
}

LloydMaxQuantizer compute_lloyd_max(int bits) {
  std::vector<double> thresholds = solve_lloyd_thresholds(bits);
  const CellMoments m = cell_moments(thresholds);

  double signal_kept = 0.0;
  for (std::size_t i = 0; i < m.prob.size(); ++i) signal_kept += m.prob[i] * m.centroid[i] * m.centroid[i];

  LloydMaxQuantizer out;
  out.spec.bits = bits;
  out.spec.family = QuantizerFamily::lloyd_max_gaussian;
  out.spec.thresholds = std::move(thresholds);
  out.spec.levels = m.centroid;
  out.distortion = {bits, 1.0 - signal_kept};
  return out;
}

}  // namespace

void check_bits(int bits) {
  if (bits < kMinBits || bits > kMaxBits)
    throw std::out_of_range("ADC resolution must lie in [1, 8] bits, got " + std::to_string(bits));
}

double matched_stepsize(int bits, double snr) {
  if (bits < 1) throw std::out_of_range("matched_stepsize: bits must be >= 1");
  if (!(snr >= 0.0)) throw std::invalid_argument("matched_stepsize: snr must be nonnegative");
  const double m = std::ldexp(1.0, bits);
  return std::sqrt(12.0 * snr / (m * m - 1.0));
}

QuantizerSpec uniform_pam_quantizer(int bits, double snr) {
  check_bits(bits);
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("uniform_pam_quantizer: snr must be positive");
  const int n = alphabet_size(bits);
  const double step = matched_stepsize(bits, snr);
  QuantizerSpec spec;
  spec.bits = bits;
  spec.family = QuantizerFamily::uniform_pam_matched;
  spec.stepsize_over_noise = step;
  spec.levels.resize(static_cast<std::size_t>(n));
  spec.thresholds.resize(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) spec.levels[i] = 0.5 * (2 * i - (n - 1)) * step;
  for (int j = 0; j < n - 1; ++j) spec.thresholds[j] = (j - (n / 2 - 1)) * step;
  return spec;
}

TransitionMatrix build_transition_matrix(int bits, double snr) {
  const QuantizerSpec q = uniform_pam_quantizer(bits, snr);
  const auto n = q.levels.size();
  TransitionMatrix out{RMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = q.levels[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = cell_lower(q.thresholds, j) - s;
      const double hi = cell_upper(q.thresholds, j) - s;
      out.entries(i, j) = normal_interval(lo, hi);
    }
  }
  return out;
}

const LloydMaxQuantizer& lloyd_max(int bits) {
  check_bits(bits);
  static std::array<std::once_flag, kMaxBits + 1> flags;
  static std::array<LloydMaxQuantizer, kMaxBits + 1> cache;
  std::call_once(flags[bits], [bits] { cache[bits] = compute_lloyd_max(bits); });
  return cache[bits];
}

double high_resolution_distortion(int bits) {
  if (bits < 1) throw std::out_of_range("high_resolution_distortion: bits must be >= 1");
  return 0.5 * std::numbers::pi * std::sqrt(3.0) * std::ldexp(1.0, -2 * bits);
}

double pam_error_probability(int bits, double snr) {
  if (bits < 1) throw std::out_of_range("pam_error_probability: bits must be >= 1");
  if (!(snr >= 0.0)) throw std::invalid_argument("pam_error_probability: snr must be nonnegative");
  const double m = std::ldexp(1.0, bits);
  return 2.0 * (1.0 - 1.0 / m) * normal_tail(std::sqrt(3.0 * snr / (m * m - 1.0)));
}

}  // namespace quantlink
