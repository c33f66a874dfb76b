#pragma once

#include <cstddef>
#include <vector>

#include "acclab/matrix.hpp"
#include "acclab/rng.hpp"
#include "acclab/spd.hpp"

namespace acclab {

// Direction of the mean shift used by the synthetic experiments.
enum class MeanShift { uniform, first_axis };

// Two-class Gaussian problem: class 0 ~ N(mu0, sigma), class 1 ~ N(mu1, sigma)
// with a shared, known covariance. Validated at construction.
struct ProblemSpec {
  ProblemSpec(std::size_t n_per_class, std::vector<double> mean0,
              std::vector<double> mean1, SpdMatrix covariance);

  std::size_t d;  // dimension
  std::size_t n;  // per-class sample size
  std::vector<double> mu0;
  std::vector<double> mu1;
  SpdMatrix sigma;
  SpdKind covariance_kind;
};

// Paired dataset: x rows are class-0 samples, y rows are class-1 samples.
struct TwoSampleData {
  Matrix x;
  Matrix y;
};

// Throws std::invalid_argument unless x and y are nonempty and share a shape.
void validate_two_sample(const TwoSampleData& data);

// Signal-to-noise ratio sqrt(delta' Sigma^-1 delta), delta = mu0 - mu1,
// computed as the Euclidean norm of the whitened difference L^-1 delta.
double snr(const ProblemSpec& spec);

// Identity-covariance spec with mu0 = 0 and mu1 = -psi * v, where v is the
// unit vector (1,...,1)/sqrt(d) (uniform) or e1 (first_axis); snr == psi.
ProblemSpec spec_for_experiment(std::size_t d, std::size_t n, double psi,
                                MeanShift direction = MeanShift::uniform);

// Draws n rows per class as mu + L g with g standard normal, consuming the
// stream row-major (all of x, then all of y). Pure in (spec, seed).
TwoSampleData sample(const ProblemSpec& spec, SeedSpec seed);

}  // namespace acclab
