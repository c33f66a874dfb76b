#include "acclab/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "acclab/data_csv.hpp"
#include "acclab/normal.hpp"
#include "acclab/testing.hpp"
#include "acclab/theory.hpp"

namespace acclab {

TestScheme parse_test_scheme(std::string_view name) {
  if (name == "split-accuracy") return TestScheme::split_accuracy;
  if (name == "hotelling") return TestScheme::hotelling;
  if (name == "sd") return TestScheme::sd;
  if (name == "perm-direct") return TestScheme::perm_direct;
  if (name == "perm-method1") return TestScheme::perm_method1;
  if (name == "perm-method2") return TestScheme::perm_method2;
  throw std::invalid_argument("unknown test scheme \"" + std::string(name) +
                              "\"");
}

std::string_view test_scheme_name(TestScheme scheme) {
  switch (scheme) {
    case TestScheme::split_accuracy:
      return "split-accuracy";
    case TestScheme::hotelling:
      return "hotelling";
    case TestScheme::sd:
      return "sd";
    case TestScheme::perm_direct:
      return "perm-direct";
    case TestScheme::perm_method1:
      return "perm-method1";
    case TestScheme::perm_method2:
      return "perm-method2";
  }
  return "split-accuracy";
}

double resolved_alpha(const ExperimentConfig& config) {
  if (config.alpha.has_value() == config.z_alpha.has_value()) {
    throw std::invalid_argument(
        "ExperimentConfig: exactly one of alpha / z_alpha must be set");
  }
  const double alpha = config.alpha.has_value()
                           ? *config.alpha
                           : std_normal_cdf(-*config.z_alpha);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(
        "ExperimentConfig: resolved alpha must lie in (0, 1)");
  }
  return alpha;
}

void validate_config(const ExperimentConfig& config) {
  resolved_alpha(config);
  if (config.repetitions == 0) {
    throw std::invalid_argument("ExperimentConfig: repetitions must be >= 1");
  }
  if (config.grid.empty()) {
    throw std::invalid_argument("ExperimentConfig: grid must be nonempty");
  }
  if (config.permutation_p == 0) {
    throw std::invalid_argument(
        "ExperimentConfig: permutation_p must be >= 1");
  }
  for (const ExperimentPoint& pt : config.grid) {
    if (pt.d == 0) {
      throw std::invalid_argument("ExperimentConfig: every d must be >= 1");
    }
    if (pt.n == 0 || pt.n % 2 != 0) {
      throw std::invalid_argument("ExperimentConfig: every n must be even");
    }
    if (!(pt.psi >= 0.0) || !std::isfinite(pt.psi)) {
      throw std::invalid_argument("ExperimentConfig: every psi must be >= 0");
    }
  }
}

namespace {

// Runs fn(0..count-1) across `workers` threads via an atomic work index;
// the schedule cannot affect results because each index owns its outputs.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t thread_count = std::min(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (std::size_t t = 0; t < thread_count; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

bool run_one_test(const ProblemSpec& spec, TestScheme scheme, double alpha,
                  std::size_t permutation_p, SeedSpec rep_seed) {
  const TwoSampleData data = sample(spec, rep_seed);
  const PermutationConfig cfg{permutation_p, rep_seed};
  switch (scheme) {
    case TestScheme::split_accuracy:
      return test_split_accuracy(data, spec.sigma, alpha).reject;
    case TestScheme::hotelling:
    case TestScheme::perm_direct:
      return perm_test_hotelling(data, spec.sigma, cfg, alpha).reject;
    case TestScheme::sd:
      return perm_test_sd(data, cfg, alpha).reject;
    case TestScheme::perm_method1:
      return perm_test_method1(data, spec.sigma, cfg, alpha).reject;
    case TestScheme::perm_method2:
      return perm_test_method2(data, spec.sigma, cfg, alpha).reject;
  }
  throw std::invalid_argument("unknown test scheme");
}

}  // namespace

PowerCurvePoint estimate_power(const ProblemSpec& spec, TestScheme scheme,
                               double alpha, std::size_t repetitions,
                               SeedSpec seed, std::size_t workers,
                               std::size_t permutation_p) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("estimate_power: alpha must lie in (0, 1)");
  }
  if (repetitions == 0) {
    throw std::invalid_argument("estimate_power: repetitions must be >= 1");
  }
  if (permutation_p == 0) {
    throw std::invalid_argument("estimate_power: permutation_p must be >= 1");
  }
  if (spec.n % 2 != 0) {
    throw std::invalid_argument(
        "estimate_power: per-class size n must be even");
  }

  std::vector<unsigned char> reject(repetitions, 0);
  parallel_for(repetitions, workers, [&](std::size_t r) {
    const SeedSpec rep_seed{seed.master_seed, seed.stream_index + r};
    reject[r] = run_one_test(spec, scheme, alpha, permutation_p, rep_seed)
                    ? 1
                    : 0;
  });
  std::size_t hits = 0;
  for (const unsigned char b : reject) hits += b;

  PowerCurvePoint point;
  point.d = spec.d;
  point.n = spec.n;
  point.psi = snr(spec);
  point.empirical_power =
      static_cast<double>(hits) / static_cast<double>(repetitions);
  point.mc_stderr =
      std::sqrt(point.empirical_power * (1.0 - point.empirical_power) /
                static_cast<double>(repetitions));
  const PowerQuery query{point.psi, spec.n, spec.d, alpha};
  point.theory_minimax = minimax_power_lower_bound(query);
  point.theory_lda_approx = lda_power_approx(query);
  point.theory_lda_expected = lda_expected_power(query);
  return point;
}

std::vector<PowerCurvePoint> run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const double alpha = resolved_alpha(config);
  std::vector<PowerCurvePoint> points;
  points.reserve(config.grid.size());
  for (std::size_t k = 0; k < config.grid.size(); ++k) {
    const ExperimentPoint& pt = config.grid[k];
    const ProblemSpec spec =
        spec_for_experiment(pt.d, pt.n, pt.psi, config.direction);
    const SeedSpec base{config.master_seed, k * config.repetitions};
    points.push_back(estimate_power(spec, config.test_scheme, alpha,
                                    config.repetitions, base, config.workers,
                                    config.permutation_p));
  }
  return points;
}

namespace {

std::vector<PowerCurvePoint> run_section7(std::uint64_t master_seed,
                                          std::size_t repetitions,
                                          std::size_t workers, bool constant,
                                          bool fixed_d) {
  ExperimentConfig config;
  config.repetitions = repetitions;
  config.z_alpha = 2.0;
  config.master_seed = master_seed;
  config.workers = workers;
  for (std::size_t e = 1; e <= 30; ++e) {
    ExperimentPoint pt;
    const std::size_t d = (!constant && fixed_d) ? 100 : 20 * e;
    pt.d = d;
    pt.n = d;
    const double root4 = std::pow(static_cast<double>(d), 0.25);
    pt.psi = constant ? 3.0 / root4 : static_cast<double>(e) / (10.0 * root4);
    config.grid.push_back(pt);
  }
  return run_experiment(config);
}

}  // namespace

std::vector<PowerCurvePoint> experiment_constant_power(
    std::uint64_t master_seed, std::size_t repetitions, std::size_t workers) {
  return run_section7(master_seed, repetitions, workers, true, false);
}

std::vector<PowerCurvePoint> experiment_increasing_power(
    std::uint64_t master_seed, bool fixed_d, std::size_t repetitions,
    std::size_t workers) {
  return run_section7(master_seed, repetitions, workers, false, fixed_d);
}

void write_power_csv(std::ostream& out,
                     const std::vector<PowerCurvePoint>& points) {
  out << "d,n,psi,empirical_power,mc_stderr,theory_minimax,theory_lda_approx,"
         "theory_lda_expected\n";
  for (const PowerCurvePoint& p : points) {
    out << p.d << ',' << p.n << ',' << format_double(p.psi) << ','
        << format_double(p.empirical_power) << ','
        << format_double(p.mc_stderr) << ',' << format_double(p.theory_minimax)
        << ',' << format_double(p.theory_lda_approx) << ','
        << format_double(p.theory_lda_expected) << '\n';
  }
}

std::string power_csv_string(const std::vector<PowerCurvePoint>& points) {
  std::ostringstream out;
  write_power_csv(out, points);
  return out.str();
}

}  // namespace acclab
