#include "acclab/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "acclab/classifier.hpp"
#include "acclab/normal.hpp"

namespace acclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_query(const PowerQuery& q) {
  if (!(q.psi >= 0.0) || !std::isfinite(q.psi)) {
    throw std::domain_error("PowerQuery: psi must be >= 0 and finite");
  }
  if (q.n == 0 || q.d == 0) {
    throw std::domain_error("PowerQuery: n and d must be >= 1");
  }
  if (!(q.alpha > 0.0) || !(q.alpha < 1.0)) {
    throw std::domain_error("PowerQuery: alpha must lie in (0, 1)");
  }
}

double upper_quantile(double alpha) { return std_normal_quantile(1.0 - alpha); }

}  // namespace

double minimax_power_lower_bound(const PowerQuery& q) {
  require_query(q);
  const double z = upper_quantile(q.alpha);
  const double d = static_cast<double>(q.d);
  const double n = static_cast<double>(q.n);
  const double psi2 = q.psi * q.psi;
  const double shrink = std::sqrt(d / (d + n * psi2));
  const double shift = psi2 / std::sqrt(8.0 * d / (n * n) + 8.0 * psi2 / n);
  return std_normal_cdf(-shrink * z + shift);
}

double low_snr_power(const PowerQuery& q) {
  require_query(q);
  const double z = upper_quantile(q.alpha);
  const double shift = static_cast<double>(q.n) * q.psi * q.psi /
                       std::sqrt(8.0 * static_cast<double>(q.d));
  return std_normal_cdf(-z + shift);
}

double lda_power_approx(const PowerQuery& q, bool low_snr) {
  require_query(q);
  const double z = upper_quantile(q.alpha);
  const double d = static_cast<double>(q.d);
  const double n = static_cast<double>(q.n);
  const double psi2 = q.psi * q.psi;
  const double shift =
      low_snr ? n * psi2 / std::sqrt(16.0 * kPi * d)
              : psi2 / std::sqrt(4.0 * kPi * psi2 / n + 16.0 * kPi * d / (n * n));
  return std_normal_cdf(shift - z);
}

double lda_expected_power(const PowerQuery& q) {
  require_query(q);
  if (q.n % 2 != 0) {
    throw std::domain_error(
        "lda_expected_power: n must be even (training uses n/2 per class)");
  }
  const double z = upper_quantile(q.alpha);
  const double expected_error = expected_error_raudys(q.psi, q.n / 2, q.d);
  const double n = static_cast<double>(q.n);
  return std_normal_cdf(std::sqrt(2.0 * n) * (0.5 - expected_error) - z);
}

}  // namespace acclab
