#pragma once

#include <vector>

#include "quantlink/types.hpp"

namespace quantlink {

inline constexpr int kMinBits = 1;
inline constexpr int kMaxBits = 8;

enum class QuantizerFamily { uniform_pam_matched, lloyd_max_gaussian };

// Scalar quantizer acting on one real dimension. For the uniform family the
// levels and thresholds are expressed in units of the noise standard
// deviation xi; for Lloyd-Max they are in units of the input standard deviation.
struct QuantizerSpec {
  int bits = 1;
  QuantizerFamily family = QuantizerFamily::uniform_pam_matched;
  double stepsize_over_noise = 0.0;  // Delta / xi, uniform family only
  std::vector<double> thresholds;    // 2^b - 1, increasing
  std::vector<double> levels;        // 2^b, increasing
};

struct DistortionFactor {
  int bits = 1;
  double eta = 0.0;  // E[(Q(y) - y)^2] / E[y^2]
};

// Row i = transmitted PAM level i, column j = quantizer output region j.
struct TransitionMatrix {
  RMatrix entries;

  Eigen::Index alphabet_size() const noexcept { return entries.rows(); }
};

// Throws std::out_of_range unless kMinBits <= bits <= kMaxBits.
void check_bits(int bits);

// Delta / xi = sqrt(12 snr / (2^{2b} - 1)): the stepsize for which equiprobable
// 2^b-PAM with spacing Delta has per-dimension SNR `snr`.
double matched_stepsize(int bits, double snr);

// 2^b-PAM levels (2i - 2^b + 1) Delta/2 with midpoint thresholds, in units of xi.
QuantizerSpec uniform_pam_quantizer(int bits, double snr);

// Pr(r | s) for 2^b-PAM through real AWGN of unit variance and the matched
// uniform quantizer.
TransitionMatrix build_transition_matrix(int bits, double snr);

struct LloydMaxQuantizer {
  QuantizerSpec spec;
  DistortionFactor distortion;
};

// MSE-optimal quantizer for a unit Gaussian. Results are memoized per bit count.
const LloydMaxQuantizer& lloyd_max(int bits);

// High-resolution approximation (pi * sqrt(3) / 2) * 2^{-2b}.
double high_resolution_distortion(int bits);

// Symbol error probability of 2^b-PAM with midpoint decisions:
// 2 (1 - 2^{-b}) Q(sqrt(3 snr / (2^{2b} - 1))).
double pam_error_probability(int bits, double snr);

}  // namespace quantlink
