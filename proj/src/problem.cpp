#include "acclab/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "acclab/kernels.hpp"

namespace acclab {

ProblemSpec::ProblemSpec(std::size_t n_per_class, std::vector<double> mean0,
                         std::vector<double> mean1, SpdMatrix covariance)
    : d(mean0.size()),
      n(n_per_class),
      mu0(std::move(mean0)),
      mu1(std::move(mean1)),
      sigma(std::move(covariance)),
      covariance_kind(sigma.kind()) {
  if (d == 0) throw std::invalid_argument("ProblemSpec: dimension must be >= 1");
  if (n == 0) {
    throw std::invalid_argument("ProblemSpec: per-class size n must be >= 1");
  }
  if (mu1.size() != d) {
    throw std::invalid_argument("ProblemSpec: mu0 and mu1 lengths differ");
  }
  if (sigma.dim() != d) {
    throw std::invalid_argument("ProblemSpec: sigma dimension " +
                                std::to_string(sigma.dim()) +
                                " does not match mean dimension " +
                                std::to_string(d));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!std::isfinite(mu0[j]) || !std::isfinite(mu1[j])) {
      throw std::invalid_argument("ProblemSpec: means must be finite");
    }
  }
}

void validate_two_sample(const TwoSampleData& data) {
  if (data.x.rows == 0 || data.y.rows == 0) {
    throw std::invalid_argument("TwoSampleData: both classes need >= 1 row");
  }
  if (data.x.cols != data.y.cols || data.x.cols == 0) {
    throw std::invalid_argument("TwoSampleData: class dimensions differ");
  }
  if (data.x.rows != data.y.rows) {
    throw std::invalid_argument(
        "TwoSampleData: unequal class sizes are not supported");
  }
}

double snr(const ProblemSpec& spec) {
  std::vector<double> delta(spec.d);
  for (std::size_t j = 0; j < spec.d; ++j) delta[j] = spec.mu0[j] - spec.mu1[j];
  const std::vector<double> z = spec.sigma.forward_solve(delta);
  double s = 0.0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

ProblemSpec spec_for_experiment(std::size_t d, std::size_t n, double psi,
                                MeanShift direction) {
  if (!(psi >= 0.0) || !std::isfinite(psi)) {
    throw std::invalid_argument("spec_for_experiment: psi must be >= 0");
  }
  if (d == 0) {
    throw std::invalid_argument("spec_for_experiment: d must be >= 1");
  }
  std::vector<double> mu0(d, 0.0);
  std::vector<double> mu1(d, 0.0);
  if (direction == MeanShift::uniform) {
    const double coord = -psi / std::sqrt(static_cast<double>(d));
    mu1.assign(d, coord);
  } else {
    mu1[0] = -psi;
  }
  return ProblemSpec(n, std::move(mu0), std::move(mu1),
                     SpdMatrix::identity(d));
}

namespace {

void fill_class(Matrix& rows, const std::vector<double>& mu,
                const SpdMatrix& sigma, RandomStream& g,
                std::vector<double>& scratch) {
  const std::size_t d = rows.cols;
  for (std::size_t r = 0; r < rows.rows; ++r) {
    double* row = rows.row(r);
    switch (sigma.kind()) {
      case SpdKind::identity:
        g.fill_gaussian(row, d);
        kernels::axpy(1.0, mu.data(), row, d);
        break;
      case SpdKind::diagonal: {
        const std::vector<double>& sd = sigma.sqrt_diag();
        g.fill_gaussian(row, d);
        for (std::size_t j = 0; j < d; ++j) row[j] = mu[j] + sd[j] * row[j];
        break;
      }
      case SpdKind::dense: {
        g.fill_gaussian(scratch.data(), d);
        const Matrix& lower = sigma.chol();
        for (std::size_t i = 0; i < d; ++i) {
          row[i] = mu[i] + kernels::dot(lower.row(i), scratch.data(), i + 1);
        }
        break;
      }
    }
  }
}

}  // namespace

TwoSampleData sample(const ProblemSpec& spec, SeedSpec seed) {
  RandomStream g(seed, 0);
  TwoSampleData out{Matrix(spec.n, spec.d), Matrix(spec.n, spec.d)};
  std::vector<double> scratch(
      spec.covariance_kind == SpdKind::dense ? spec.d : 0);
  fill_class(out.x, spec.mu0, spec.sigma, g, scratch);
  fill_class(out.y, spec.mu1, spec.sigma, g, scratch);
  return out;
}

}  // namespace acclab
