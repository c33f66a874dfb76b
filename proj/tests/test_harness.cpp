#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "acclab/harness.hpp"
#include "acclab/problem.hpp"
#include "acclab/theory.hpp"

using namespace acclab;

namespace {

constexpr double kAlphaZ2 = 0.022750131948179207;  // Phi(-2)

bool same_point(const PowerCurvePoint& a, const PowerCurvePoint& b) {
  return a.d == b.d && a.n == b.n && a.psi == b.psi &&
         a.empirical_power == b.empirical_power &&
         a.mc_stderr == b.mc_stderr && a.theory_minimax == b.theory_minimax &&
         a.theory_lda_approx == b.theory_lda_approx &&
         a.theory_lda_expected == b.theory_lda_expected;
}

}  // namespace

TEST_CASE("scheme names round trip") {
  for (const TestScheme s :
       {TestScheme::split_accuracy, TestScheme::hotelling, TestScheme::sd,
        TestScheme::perm_direct, TestScheme::perm_method1,
        TestScheme::perm_method2}) {
    CHECK(parse_test_scheme(test_scheme_name(s)) == s);
  }
  CHECK(test_scheme_name(TestScheme::split_accuracy) == "split-accuracy");
  CHECK(test_scheme_name(TestScheme::perm_method2) == "perm-method2");
  CHECK_THROWS_AS((void)parse_test_scheme("bogus"), std::invalid_argument);
}

TEST_CASE("alpha resolution accepts exactly one level specification") {
  ExperimentConfig cfg;
  cfg.grid = {{4, 8, 0.5}};
  CHECK_THROWS_AS((void)resolved_alpha(cfg), std::invalid_argument);
  cfg.alpha = 0.05;
  CHECK(resolved_alpha(cfg) == 0.05);
  cfg.z_alpha = 2.0;
  CHECK_THROWS_AS((void)resolved_alpha(cfg), std::invalid_argument);
  cfg.alpha.reset();
  CHECK(resolved_alpha(cfg) == doctest::Approx(kAlphaZ2).epsilon(1e-13));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.alpha = 0.05;
  cfg.grid = {{4, 8, 0.5}};
  CHECK_NOTHROW(validate_config(cfg));

  ExperimentConfig empty = cfg;
  empty.grid.clear();
  CHECK_THROWS_AS(validate_config(empty), std::invalid_argument);

  ExperimentConfig odd = cfg;
  odd.grid = {{4, 7, 0.5}};
  CHECK_THROWS_AS(validate_config(odd), std::invalid_argument);

  ExperimentConfig neg = cfg;
  neg.grid = {{4, 8, -0.5}};
  CHECK_THROWS_AS(validate_config(neg), std::invalid_argument);

  ExperimentConfig zero_reps = cfg;
  zero_reps.repetitions = 0;
  CHECK_THROWS_AS(validate_config(zero_reps), std::invalid_argument);

  ExperimentConfig bad_alpha = cfg;
  bad_alpha.alpha = 1.0;
  CHECK_THROWS_AS(validate_config(bad_alpha), std::invalid_argument);
}

TEST_CASE("strong signals are always detected") {
  const ProblemSpec s = spec_for_experiment(2, 40, 20.0);
  const PowerCurvePoint p = estimate_power(s, TestScheme::split_accuracy,
                                           0.05, 100, SeedSpec{1, 0});
  CHECK(p.empirical_power == 1.0);
  CHECK(p.mc_stderr == 0.0);
  CHECK(p.d == 2);
  CHECK(p.n == 40);
  CHECK(p.psi == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("estimated power is a rejection fraction with matching stderr") {
  const ProblemSpec s = spec_for_experiment(10, 20, 0.8);
  const PowerCurvePoint p = estimate_power(s, TestScheme::split_accuracy,
                                           0.05, 80, SeedSpec{5, 0});
  const double count = p.empirical_power * 80.0;
  CHECK(std::fabs(count - std::round(count)) <= 1e-9);
  CHECK(p.mc_stderr ==
        doctest::Approx(std::sqrt(p.empirical_power *
                                  (1.0 - p.empirical_power) / 80.0))
            .epsilon(1e-12));
}

TEST_CASE("theory columns quote the closed forms at the spec's snr") {
  const double psi = 3.0 / std::pow(100.0, 0.25);
  const ProblemSpec s = spec_for_experiment(100, 100, psi);
  const PowerCurvePoint p = estimate_power(s, TestScheme::split_accuracy,
                                           kAlphaZ2, 10, SeedSpec{2, 0});
  PowerQuery q;
  q.psi = snr(s);
  q.n = 100;
  q.d = 100;
  q.alpha = kAlphaZ2;
  CHECK(p.theory_minimax == minimax_power_lower_bound(q));
  CHECK(p.theory_lda_approx == lda_power_approx(q));
  CHECK(p.theory_lda_expected == lda_expected_power(q));
  CHECK(p.theory_minimax == doctest::Approx(0.8044153589236145).epsilon(1e-12));
}

TEST_CASE("estimates are identical for any worker count") {
  const ProblemSpec s = spec_for_experiment(10, 20, 0.6);
  for (const TestScheme scheme :
       {TestScheme::split_accuracy, TestScheme::hotelling,
        TestScheme::perm_method2}) {
    const PowerCurvePoint w1 =
        estimate_power(s, scheme, 0.05, 60, SeedSpec{33, 0}, 1, 49);
    const PowerCurvePoint w4 =
        estimate_power(s, scheme, 0.05, 60, SeedSpec{33, 0}, 4, 49);
    const PowerCurvePoint w8 =
        estimate_power(s, scheme, 0.05, 60, SeedSpec{33, 0}, 8, 49);
    CHECK(same_point(w1, w4));
    CHECK(same_point(w1, w8));
  }
}

TEST_CASE("repetition r always owns stream index base + r") {
  // Re-running with a base offset equal to the grid stride reproduces the
  // second grid point of a two-point experiment exactly.
  ExperimentConfig cfg;
  cfg.grid = {{6, 12, 0.4}, {6, 12, 1.1}};
  cfg.repetitions = 30;
  cfg.alpha = 0.05;
  cfg.master_seed = 99;
  const std::vector<PowerCurvePoint> points = run_experiment(cfg);
  REQUIRE(points.size() == 2);

  const ProblemSpec second = spec_for_experiment(6, 12, 1.1);
  const PowerCurvePoint direct = estimate_power(
      second, TestScheme::split_accuracy, 0.05, 30, SeedSpec{99, 30});
  CHECK(same_point(points[1], direct));
}

TEST_CASE("experiment runner honors the declared scheme") {
  ExperimentConfig cfg;
  cfg.grid = {{4, 16, 2.0}};
  cfg.repetitions = 25;
  cfg.alpha = 0.05;
  cfg.master_seed = 7;
  cfg.test_scheme = TestScheme::perm_method1;
  cfg.permutation_p = 49;
  const std::vector<PowerCurvePoint> perm = run_experiment(cfg);
  cfg.test_scheme = TestScheme::split_accuracy;
  const std::vector<PowerCurvePoint> analytic = run_experiment(cfg);
  REQUIRE(perm.size() == 1);
  REQUIRE(analytic.size() == 1);
  // Same draws, different calibration: both detect a strong signal clearly
  // above the 5% level.
  CHECK(perm[0].empirical_power >= 0.5);
  CHECK(analytic[0].empirical_power >= 0.5);
}

TEST_CASE("canonical constant-power experiment: shape and theory columns") {
  const std::vector<PowerCurvePoint> points =
      experiment_constant_power(123, 2);
  REQUIRE(points.size() == 30);
  for (std::size_t e = 1; e <= 30; ++e) {
    const PowerCurvePoint& p = points[e - 1];
    CHECK(p.d == 20 * e);
    CHECK(p.n == p.d);
    CHECK(p.psi ==
          doctest::Approx(3.0 / std::pow(static_cast<double>(p.d), 0.25))
              .epsilon(1e-12));
  }
  // The minimax column climbs toward its plateau as d grows.
  CHECK(points.front().theory_minimax < points.back().theory_minimax);
  CHECK(points.back().theory_minimax ==
        doctest::Approx(0.8439403366706585).epsilon(1e-12));
  // Every theory column is a probability no smaller than half the level.
  for (const PowerCurvePoint& p : points) {
    for (const double t :
         {p.theory_minimax, p.theory_lda_approx, p.theory_lda_expected}) {
      CHECK(t >= kAlphaZ2 / 2.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("canonical increasing-power experiment: psi schedule") {
  const std::vector<PowerCurvePoint> def = experiment_increasing_power(5, false, 2);
  REQUIRE(def.size() == 30);
  for (std::size_t e = 1; e <= 30; ++e) {
    const PowerCurvePoint& p = def[e - 1];
    CHECK(p.d == 20 * e);
    CHECK(p.psi == doctest::Approx(static_cast<double>(e) /
                                   (10.0 * std::pow(static_cast<double>(p.d),
                                                    0.25)))
                       .epsilon(1e-12));
  }

  const std::vector<PowerCurvePoint> fixed = experiment_increasing_power(5, true, 2);
  REQUIRE(fixed.size() == 30);
  double prev = 0.0;
  for (std::size_t e = 1; e <= 30; ++e) {
    const PowerCurvePoint& p = fixed[e - 1];
    CHECK(p.d == 100);
    CHECK(p.n == 100);
    CHECK(p.psi == doctest::Approx(static_cast<double>(e) /
                                   (10.0 * std::pow(100.0, 0.25)))
                       .epsilon(1e-12));
    // The theoretical curve must climb strictly with the signal.
    CHECK(p.theory_minimax > prev);
    prev = p.theory_minimax;
  }
}

TEST_CASE("csv serialization has the frozen schema and exact values") {
  PowerCurvePoint p;
  p.d = 2;
  p.n = 4;
  p.psi = 0.5;
  p.empirical_power = 0.25;
  p.mc_stderr = 0.125;
  p.theory_minimax = 0.5;
  p.theory_lda_approx = 0.25;
  p.theory_lda_expected = 0.125;
  const std::string text = power_csv_string({p});
  CHECK(text ==
        "d,n,psi,empirical_power,mc_stderr,theory_minimax,theory_lda_approx,"
        "theory_lda_expected\n2,4,0.5,0.25,0.125,0.5,0.25,0.125\n");
}

TEST_CASE("csv serialization round-trips doubles exactly") {
  PowerCurvePoint p;
  p.d = 3;
  p.n = 6;
  p.psi = 0.1;  // not exactly representable; shortest form must say "0.1"
  p.empirical_power = 1.0 / 3.0;
  p.mc_stderr = 0.0;
  p.theory_minimax = 0.022750131948179207;
  p.theory_lda_approx = 1e-300;
  p.theory_lda_expected = 0.9999999999999999;
  const std::string text = power_csv_string({p});
  const std::string row = text.substr(text.find('\n') + 1);
  CHECK(row ==
        "3,6,0.1,0.3333333333333333,0,0.02275013194817921,1e-300,"
        "0.9999999999999999\n");
}

TEST_CASE("monte carlo power tracks the expected-error curve on the grid") {
  // Spot-check a few canonical constant-power grid points at R = 200: the
  // empirical power may sit well off the linearized approximation but stays
  // within the documented band of the expected-error form.
  ExperimentConfig cfg;
  for (const std::size_t e : {std::size_t{1}, std::size_t{5}, std::size_t{15}}) {
    const std::size_t d = 20 * e;
    cfg.grid.push_back(
        {d, d, 3.0 / std::pow(static_cast<double>(d), 0.25)});
  }
  cfg.repetitions = 200;
  cfg.z_alpha = 2.0;
  cfg.master_seed = 321;
  const std::vector<PowerCurvePoint> points = run_experiment(cfg);
  for (const PowerCurvePoint& p : points) {
    const double band = std::max(0.12, 4.0 * p.mc_stderr);
    CHECK(std::fabs(p.empirical_power - p.theory_lda_expected) <= band);
  }
}

TEST_CASE("null configuration rejects at the rate the statistic implies") {
  // At psi = 0 the split statistic has variance ~1/2, so a z = 2 cutoff
  // rejects with probability Phi(-2 sqrt(2)) ~ 0.0023 — well below the
  // nominal level. The empirical rate must stay under alpha and close to
  // the implied rate.
  ExperimentConfig cfg;
  cfg.grid = {{100, 100, 0.0}};
  cfg.repetitions = 2000;
  cfg.z_alpha = 2.0;
  cfg.master_seed = 888;
  const std::vector<PowerCurvePoint> points = run_experiment(cfg);
  REQUIRE(points.size() == 1);
  const double rate = points[0].empirical_power;
  CHECK(rate <= kAlphaZ2);
  CHECK(std::fabs(rate - 0.0023388674905236315) <= 0.005);
}
