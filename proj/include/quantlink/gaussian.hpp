#pragma once

// Standard normal density, distribution and tail functions.

namespace quantlink {

double normal_pdf(double x);

// Phi(x) = P(Z <= x).
double normal_cdf(double x);

// Q(x) = P(Z > x) = 1 - Phi(x), evaluated without cancellation for large x.
double normal_tail(double x);

// P(lo < Z <= hi). Uses whichever tail keeps the difference well conditioned.
double normal_interval(double lo, double hi);

// Phi^{-1}(p) for p in (0, 1).
double normal_quantile(double p);

}  // namespace quantlink
