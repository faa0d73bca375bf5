#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace quantlink {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Seed of the i-th realization of a run:
//   split_seed(master, i) = mix64(master + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; every transform below is implemented
// here rather than through <random> distributions, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // One engine draw: (k + 0.5) / 2^53 with k the top 53 bits. Never 0 or 1.
  double uniform();
  // One engine draw mapped to (lo, hi).
  double uniform(double lo, double hi);
  // Two draws, Box-Muller cosine branch.
  double gaussian();
  // One draw, inverse CDF of a zero-mean Laplacian with the given standard deviation.
  double laplace(double stddev);
  // Two draws, Box-Muller pair scaled to unit total variance (CN(0, 1)).
  std::complex<double> complex_gaussian();

 private:
  std::mt19937_64 engine_;
};

}  // namespace quantlink
