#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "acclab/normal.hpp"
#include "acclab/theory.hpp"

using namespace acclab;

namespace {

constexpr double kAlphaZ2 = 0.022750131948179207;  // Phi(-2)

PowerQuery grid_query(std::size_t e) {
  // Canonical constant-power grid point: d = n = 20e, psi = 3/d^(1/4).
  PowerQuery q;
  q.d = 20 * e;
  q.n = 20 * e;
  q.psi = 3.0 / std::pow(static_cast<double>(q.d), 0.25);
  q.alpha = kAlphaZ2;
  return q;
}

}  // namespace

TEST_CASE("every curve equals alpha at psi = 0") {
  for (const double alpha : {0.01, 0.05, 0.25, 0.5}) {
    PowerQuery q;
    q.psi = 0.0;
    q.n = 60;
    q.d = 12;
    q.alpha = alpha;
    CHECK(std::fabs(minimax_power_lower_bound(q) - alpha) <= 1e-12);
    CHECK(std::fabs(low_snr_power(q) - alpha) <= 1e-12);
    CHECK(std::fabs(lda_power_approx(q) - alpha) <= 1e-12);
    CHECK(std::fabs(lda_power_approx(q, true) - alpha) <= 1e-12);
    CHECK(std::fabs(lda_expected_power(q) - alpha) <= 1e-12);
  }
}

TEST_CASE("fixed values on the canonical grid") {
  const PowerQuery q100 = grid_query(5);  // d = n = 100
  CHECK(minimax_power_lower_bound(q100) ==
        doctest::Approx(0.8044153589236145).epsilon(1e-12));
  CHECK(lda_power_approx(q100) ==
        doctest::Approx(0.1968121652976188).epsilon(1e-12));

  const PowerQuery q600 = grid_query(30);  // d = n = 600
  CHECK(minimax_power_lower_bound(q600) ==
        doctest::Approx(0.8439403366706585).epsilon(1e-12));

  // On this grid n psi^2 / sqrt(8d) == 9/sqrt(8), independent of d.
  const double plateau = std_normal_cdf(-2.0 + 9.0 / std::sqrt(8.0));
  for (const std::size_t e : {1, 4, 12, 30}) {
    CHECK(low_snr_power(grid_query(e)) ==
          doctest::Approx(plateau).epsilon(1e-12));
  }
}

TEST_CASE("minimax curve approaches its plateau from below as d grows") {
  const double plateau = 0.88139328388745052;  // Phi(-2 + 9/sqrt(8))
  PowerQuery q;
  q.alpha = kAlphaZ2;

  q.d = q.n = 1000000;
  q.psi = 3.0 / std::pow(1e6, 0.25);
  const double gap6 = plateau - minimax_power_lower_bound(q);
  CHECK(gap6 > 0.0);
  CHECK(gap6 < 1.15e-3);

  q.d = q.n = 100000000;
  q.psi = 3.0 / std::pow(1e8, 0.25);
  const double gap8 = plateau - minimax_power_lower_bound(q);
  CHECK(gap8 > 0.0);
  CHECK(gap8 < 1.15e-4);
  // The gap shrinks by about the d^(-1/2) factor between the two sizes.
  CHECK(gap8 < gap6 / 5.0);
}

TEST_CASE("all curves are nondecreasing in psi") {
  for (const std::size_t size : {std::size_t{20}, std::size_t{100}}) {
    PowerQuery q;
    q.n = q.d = size;
    q.alpha = 0.05;
    double prev_minimax = 0.0, prev_low = 0.0, prev_approx = 0.0,
           prev_expected = 0.0;
    for (int i = 0; i <= 20; ++i) {
      q.psi = 0.25 * i;
      const double a = minimax_power_lower_bound(q);
      const double b = low_snr_power(q);
      const double c = lda_power_approx(q);
      const double d = lda_expected_power(q);
      if (i > 0) {
        CHECK(a >= prev_minimax - 1e-12);
        CHECK(b >= prev_low - 1e-12);
        CHECK(c >= prev_approx - 1e-12);
        CHECK(d >= prev_expected - 1e-12);
      }
      prev_minimax = a;
      prev_low = b;
      prev_approx = c;
      prev_expected = d;
    }
  }
}

TEST_CASE("classification-based power never beats the minimax envelope") {
  for (const std::size_t e : {1, 2, 5, 10, 20, 30}) {
    const PowerQuery q = grid_query(e);
    CHECK(lda_power_approx(q) <= minimax_power_lower_bound(q));
    CHECK(lda_expected_power(q) <= minimax_power_lower_bound(q));
  }
  // Strict at the head of the grid.
  CHECK(lda_power_approx(grid_query(5)) <
        minimax_power_lower_bound(grid_query(5)));
}

TEST_CASE("low-snr argument shift ratio is sqrt(2 pi)") {
  // Against the same z, the simplified curves shift the normal argument by
  // n psi^2/sqrt(8d) versus n psi^2/sqrt(16 pi d): ratio sqrt(2 pi).
  const double expect = 2.5066282746310005;
  for (const std::size_t e : {1, 3, 9, 30}) {
    PowerQuery q = grid_query(e);
    q.psi = 0.05;  // deep in the low-snr regime, far from saturation
    const double z = 2.0;
    const double arg_low = std_normal_quantile(low_snr_power(q)) + z;
    const double arg_lda =
        std_normal_quantile(lda_power_approx(q, true)) + z;
    CHECK(arg_low / arg_lda == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("two lda power forms agree in the low-snr regime") {
  PowerQuery q;
  q.n = q.d = 200;
  q.alpha = 0.05;
  for (const double psi : {0.02, 0.05, 0.1, 0.2, 0.3}) {
    q.psi = psi;
    const double gap =
        std::fabs(lda_expected_power(q) - lda_power_approx(q));
    CHECK(gap <= 0.02);
    if (psi <= 0.1) CHECK(gap <= 0.01);
  }
}

TEST_CASE("expected-error power form requires an even n") {
  PowerQuery q;
  q.n = 21;
  q.d = 5;
  q.psi = 1.0;
  q.alpha = 0.05;
  CHECK_THROWS_AS((void)lda_expected_power(q), std::domain_error);
  q.n = 20;
  CHECK_NOTHROW((void)lda_expected_power(q));
}

TEST_CASE("queries are validated") {
  PowerQuery q;
  q.psi = 1.0;
  q.n = 10;
  q.d = 5;
  q.alpha = 0.05;
  CHECK_NOTHROW((void)minimax_power_lower_bound(q));

  PowerQuery bad = q;
  bad.alpha = 0.0;
  CHECK_THROWS_AS((void)minimax_power_lower_bound(bad), std::domain_error);
  bad.alpha = 1.0;
  CHECK_THROWS_AS((void)low_snr_power(bad), std::domain_error);
  bad = q;
  bad.psi = -0.5;
  CHECK_THROWS_AS((void)lda_power_approx(bad), std::domain_error);
  bad = q;
  bad.n = 0;
  CHECK_THROWS_AS((void)minimax_power_lower_bound(bad), std::domain_error);
  bad = q;
  bad.d = 0;
  CHECK_THROWS_AS((void)lda_expected_power(bad), std::domain_error);
}

TEST_CASE("power saturates for strong signals") {
  PowerQuery q;
  q.n = q.d = 100;
  q.psi = 12.0;
  q.alpha = 0.05;
  CHECK(minimax_power_lower_bound(q) > 0.999);
  CHECK(lda_power_approx(q) > 0.999);
  CHECK(lda_expected_power(q) > 0.999);
}
