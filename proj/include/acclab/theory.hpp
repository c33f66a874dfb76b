#pragma once

#include <cstddef>

namespace acclab {

// Argument tuple shared by the closed-form power curves.
struct PowerQuery {
  double psi = 0.0;    // signal-to-noise ratio, >= 0
  std::size_t n = 0;   // per-class sample size, >= 1
  std::size_t d = 0;   // dimension, >= 1
  double alpha = 0.0;  // level in (0, 1)
};

// All functions validate the query (std::domain_error) and return a
// probability; each equals alpha exactly at psi = 0 and is nondecreasing
// in psi. Asymptotic correction terms are dropped throughout.

// Phi( -sqrt(d/(d + n psi^2)) z + psi^2 / sqrt(8d/n^2 + 8 psi^2/n) ),
// z = std_normal_quantile(1 - alpha): best worst-case power of any
// level-alpha test of the mean difference.
double minimax_power_lower_bound(const PowerQuery& q);

// Small-psi simplification Phi(-z + n psi^2 / sqrt(8d)).
double low_snr_power(const PowerQuery& q);

// Approximate power of the split-accuracy test,
// Phi( psi^2 / sqrt(4 pi psi^2/n + 16 pi d/n^2) - z ); with low_snr set,
// the further simplification Phi( n psi^2 / sqrt(16 pi d) - z ).
double lda_power_approx(const PowerQuery& q, bool low_snr = false);

// Pre-linearization version: Phi( sqrt(2n) (1/2 - E) - z ) where E is the
// closed-form expected split-training error at n/2 points per class.
// Requires even n (std::domain_error otherwise).
double lda_expected_power(const PowerQuery& q);

}  // namespace acclab
