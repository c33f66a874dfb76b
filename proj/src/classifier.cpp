#include "acclab/classifier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "acclab/kernels.hpp"
#include "acclab/normal.hpp"

namespace acclab {

namespace {

std::vector<double> column_means(const Matrix& m) {
  std::vector<double> mean(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    kernels::axpy(1.0, m.row(i), mean.data(), m.cols);
  }
  const double inv = 1.0 / static_cast<double>(m.rows);
  for (double& v : mean) v *= inv;
  return mean;
}

void require_trainable(const Matrix& x, const Matrix& y,
                       std::size_t min_per_class, const char* who) {
  if (x.cols == 0 || x.cols != y.cols) {
    throw std::invalid_argument(std::string(who) +
                                ": class dimensions differ");
  }
  if (x.rows < min_per_class || y.rows < min_per_class) {
    throw std::invalid_argument(std::string(who) + ": needs >= " +
                                std::to_string(min_per_class) +
                                " points per class");
  }
  if (x.rows != y.rows) {
    throw std::invalid_argument(std::string(who) +
                                ": classes must have equal sizes");
  }
}

}  // namespace

TrainedClassifier train_lda(const Matrix& x, const Matrix& y,
                            const SpdMatrix& sigma) {
  require_trainable(x, y, 1, "train_lda");
  if (sigma.dim() != x.cols) {
    throw std::invalid_argument("train_lda: sigma dimension " +
                                std::to_string(sigma.dim()) +
                                " does not match data dimension " +
                                std::to_string(x.cols));
  }
  const std::vector<double> mu0 = column_means(x);
  const std::vector<double> mu1 = column_means(y);
  std::vector<double> delta(x.cols);
  std::vector<double> mid(x.cols);
  for (std::size_t j = 0; j < x.cols; ++j) {
    delta[j] = mu1[j] - mu0[j];
    mid[j] = 0.5 * (mu0[j] + mu1[j]);
  }
  TrainedClassifier clf;
  clf.weight = sigma.solve(delta);
  clf.midpoint = std::move(mid);
  clf.kind = ClassifierKind::lda_known_sigma;
  clf.train_size_per_class = x.rows;
  return clf;
}

// Pooled within-class per-feature variance with denominator 2n-2. The zero
// test uses a threshold at the rounding noise of the means, so a literally
// constant feature is caught even when mean subtraction leaves ulp residue.
std::vector<double> pooled_feature_variance(const Matrix& x, const Matrix& y) {
  require_trainable(x, y, 2, "pooled_feature_variance");
  const std::size_t d = x.cols;
  const std::vector<double> mu0 = column_means(x);
  const std::vector<double> mu1 = column_means(y);
  std::vector<double> acc(d, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    kernels::add_sq_diff(x.row(i), mu0.data(), acc.data(), d);
  }
  for (std::size_t i = 0; i < y.rows; ++i) {
    kernels::add_sq_diff(y.row(i), mu1.data(), acc.data(), d);
  }
  const double denom = static_cast<double>(x.rows + y.rows - 2);
  double max_abs = 0.0;
  for (const double v : x.data) max_abs = std::max(max_abs, std::fabs(v));
  for (const double v : y.data) max_abs = std::max(max_abs, std::fabs(v));
  const double floor_noise = 1e-12 * (1.0 + max_abs);
  const double min_var = floor_noise * floor_noise;
  for (std::size_t j = 0; j < d; ++j) {
    acc[j] /= denom;
    if (!(acc[j] > min_var)) {
      throw std::invalid_argument(
          "degenerate variance: feature f" + std::to_string(j) +
          " has zero pooled variance");
    }
  }
  return acc;
}

TrainedClassifier train_nb(const Matrix& x, const Matrix& y) {
  require_trainable(x, y, 2, "train_nb");
  const std::vector<double> var = pooled_feature_variance(x, y);
  const std::vector<double> mu0 = column_means(x);
  const std::vector<double> mu1 = column_means(y);
  TrainedClassifier clf;
  clf.weight.resize(x.cols);
  clf.midpoint.resize(x.cols);
  for (std::size_t j = 0; j < x.cols; ++j) {
    clf.weight[j] = (mu1[j] - mu0[j]) / var[j];
    clf.midpoint[j] = 0.5 * (mu0[j] + mu1[j]);
  }
  clf.kind = ClassifierKind::naive_bayes;
  clf.train_size_per_class = x.rows;
  return clf;
}

int predict(const TrainedClassifier& clf, const double* z, std::size_t d) {
  if (d != clf.weight.size()) {
    throw std::invalid_argument("predict: dimension mismatch");
  }
  const double score = kernels::dot(clf.weight.data(), z, d) -
                       kernels::dot(clf.weight.data(), clf.midpoint.data(), d);
  return score > 0.0 ? 1 : 0;
}

int predict(const TrainedClassifier& clf, const std::vector<double>& z) {
  return predict(clf, z.data(), z.size());
}

ConditionalError conditional_error(const TrainedClassifier& clf,
                                   const ProblemSpec& spec) {
  if (clf.weight.size() != spec.d) {
    throw std::invalid_argument("conditional_error: dimension mismatch");
  }
  bool zero_weight = true;
  for (const double w : clf.weight) {
    if (w != 0.0) {
      zero_weight = false;
      break;
    }
  }
  if (zero_weight) return {0.0, 1.0, 0.5};

  const std::size_t d = spec.d;
  const std::vector<double> sw = spec.sigma.multiply(clf.weight);
  const double v = kernels::dot(clf.weight.data(), sw.data(), d);
  const double wm = kernels::dot(clf.weight.data(), clf.midpoint.data(), d);
  const double a0 = kernels::dot(clf.weight.data(), spec.mu0.data(), d) - wm;
  const double a1 = kernels::dot(clf.weight.data(), spec.mu1.data(), d) - wm;
  const double s = std::sqrt(v);
  ConditionalError ce;
  ce.e1 = std_normal_cdf(a0 / s);
  ce.e2 = std_normal_cdf(-a1 / s);
  ce.e = 0.5 * (ce.e1 + ce.e2);
  return ce;
}

double expected_error_raudys(double psi, std::size_t n_per_class,
                             std::size_t d) {
  if (!(psi >= 0.0) || !std::isfinite(psi)) {
    throw std::domain_error("expected_error_raudys: psi must be >= 0");
  }
  if (n_per_class == 0 || d == 0) {
    throw std::domain_error("expected_error_raudys: n and d must be >= 1");
  }
  const double ratio =
      2.0 * static_cast<double>(d) / static_cast<double>(n_per_class);
  return std_normal_cdf(-psi * psi / (2.0 * std::sqrt(psi * psi + ratio)));
}

}  // namespace acclab
