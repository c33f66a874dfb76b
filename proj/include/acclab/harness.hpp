#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "acclab/problem.hpp"
#include "acclab/rng.hpp"

namespace acclab {

enum class TestScheme {
  split_accuracy,  // analytic z-test on the split-accuracy statistic
  hotelling,       // permutation-calibrated Hotelling statistic
  sd,              // permutation-calibrated diagonal-covariance statistic
  perm_direct,     // alias for the direct protocol (Hotelling statistic)
  perm_method1,    // permute held-out bag, fixed classifier
  perm_method2     // re-pool and retrain per permutation
};

TestScheme parse_test_scheme(std::string_view name);
std::string_view test_scheme_name(TestScheme scheme);

struct ExperimentPoint {
  std::size_t d = 0;
  std::size_t n = 0;
  double psi = 0.0;
};

// Declarative Monte Carlo experiment: estimate rejection power on a grid.
// Exactly one of alpha / z_alpha must be set (z_alpha is the upper
// rejection threshold, so alpha = Phi(-z_alpha)).
struct ExperimentConfig {
  std::vector<ExperimentPoint> grid;
  std::size_t repetitions = 200;
  std::optional<double> alpha;
  std::optional<double> z_alpha;
  TestScheme test_scheme = TestScheme::split_accuracy;
  std::size_t permutation_p = 199;  // used by permutation schemes
  std::uint64_t master_seed = 0;
  MeanShift direction = MeanShift::uniform;
  std::size_t workers = 1;
};

// Resolves the level and validates the config (throws std::invalid_argument).
double resolved_alpha(const ExperimentConfig& config);
void validate_config(const ExperimentConfig& config);

struct PowerCurvePoint {
  std::size_t d = 0;
  std::size_t n = 0;
  double psi = 0.0;
  double empirical_power = 0.0;
  double mc_stderr = 0.0;
  double theory_minimax = 0.0;
  double theory_lda_approx = 0.0;
  double theory_lda_expected = 0.0;
};

// Runs `repetitions` independent (sample -> test) repetitions on streams
// seed.stream_index ... +repetitions-1 and returns the rejection fraction
// plus the closed-form curves at (snr(spec), n, d, alpha). The result is a
// pure function of (spec, scheme, alpha, repetitions, seed) — identical for
// any worker count, because every repetition owns stream index r and the
// aggregation is an order-independent count.
PowerCurvePoint estimate_power(const ProblemSpec& spec, TestScheme scheme,
                               double alpha, std::size_t repetitions,
                               SeedSpec seed, std::size_t workers = 1,
                               std::size_t permutation_p = 199);

// Grid point k uses stream base k*repetitions, so points never share draws.
std::vector<PowerCurvePoint> run_experiment(const ExperimentConfig& config);

// The two canonical experiments: 30 settings e = 1..30 with d = n = 20e and
// the split-accuracy test at threshold z = 2 (alpha = Phi(-2)).
//   constant power:  psi = 3 / d^(1/4)
//   increasing power: psi = e / (10 d^(1/4)); with fixed_d, d = n = 100.
std::vector<PowerCurvePoint> experiment_constant_power(
    std::uint64_t master_seed, std::size_t repetitions = 200,
    std::size_t workers = 1);
std::vector<PowerCurvePoint> experiment_increasing_power(
    std::uint64_t master_seed, bool fixed_d = false,
    std::size_t repetitions = 200, std::size_t workers = 1);

// Frozen schema:
// d,n,psi,empirical_power,mc_stderr,theory_minimax,theory_lda_approx,theory_lda_expected
void write_power_csv(std::ostream& out,
                     const std::vector<PowerCurvePoint>& points);
std::string power_csv_string(const std::vector<PowerCurvePoint>& points);

}  // namespace acclab
