#pragma once

#include <cstddef>
#include <string>

#include "acclab/problem.hpp"
#include "acclab/spd.hpp"

namespace acclab {

// Classification-error estimate. Error counts stay integers until the final
// division, so e1_hat and e2_hat are exact multiples of 1/eval_count_per_class.
struct ErrorEstimate {
  double e1_hat = 0.0;  // held-out class-0 points predicted 1
  double e2_hat = 0.0;  // held-out class-1 points predicted 0
  double e_hat = 0.0;   // (e1_hat + e2_hat) / 2
  std::string scheme;   // "split" | "loo" | "resub"
  std::size_t eval_count_per_class = 0;
};

// Trains Fisher's rule on the first n/2 rows of each class and counts errors
// on the remaining n/2 rows. Requires even n >= 4.
ErrorEstimate error_sample_split(const TwoSampleData& data,
                                 const SpdMatrix& sigma);

// Classifies each point with the rule trained on everything except itself
// (drop-one update of the class mean, one solve per held-out point).
// Requires n >= 2.
ErrorEstimate error_loo(const TwoSampleData& data, const SpdMatrix& sigma);

// Trains on all points and counts errors on the same points. Requires n >= 1.
ErrorEstimate error_resub(const TwoSampleData& data, const SpdMatrix& sigma);

}  // namespace acclab
