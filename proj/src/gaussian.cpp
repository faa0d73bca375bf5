#include "quantlink/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quantlink {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double normal_pdf(double x) {
  if (std::isinf(x)) return 0.0;
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double normal_interval(double lo, double hi) {
  if (!(lo < hi)) return 0.0;
  // Both ends in the upper half: subtract upper tails, which are small there.
  if (lo > 0.0) return normal_tail(lo) - normal_tail(hi);
  if (hi < 0.0) return normal_cdf(hi) - normal_cdf(lo);
  return 1.0 - (normal_cdf(lo) + normal_tail(hi));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  if (p > 0.5) return -normal_quantile(1.0 - p);
  // Bracket then bisect; Phi is monotone and cheap.
  double lo = -40.0;
  double hi = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace quantlink
