#include "acclab/estimators.hpp"

#include <stdexcept>
#include <vector>

#include "acclab/classifier.hpp"
#include "acclab/kernels.hpp"

namespace acclab {

namespace {

// View of a contiguous block of rows, avoiding copies of the halves.
Matrix rows_block(const Matrix& m, std::size_t first, std::size_t count) {
  Matrix out;
  out.rows = count;
  out.cols = m.cols;
  out.data.assign(m.row(first), m.row(first) + count * m.cols);
  return out;
}

// Counts class-0 rows predicted 1 within rows [first, first+count).
std::size_t count_predicted_one(const TrainedClassifier& clf, const Matrix& m,
                                std::size_t first, std::size_t count) {
  std::size_t errors = 0;
  for (std::size_t i = first; i < first + count; ++i) {
    errors += static_cast<std::size_t>(predict(clf, m.row(i), m.cols));
  }
  return errors;
}

ErrorEstimate from_counts(std::size_t wrong0, std::size_t wrong1,
                          std::size_t per_class, const char* scheme) {
  ErrorEstimate e;
  e.eval_count_per_class = per_class;
  e.e1_hat = static_cast<double>(wrong0) / static_cast<double>(per_class);
  e.e2_hat = static_cast<double>(wrong1) / static_cast<double>(per_class);
  e.e_hat = 0.5 * (e.e1_hat + e.e2_hat);
  e.scheme = scheme;
  return e;
}

}  // namespace

ErrorEstimate error_sample_split(const TwoSampleData& data,
                                 const SpdMatrix& sigma) {
  validate_two_sample(data);
  const std::size_t n = data.x.rows;
  if (n % 2 != 0) {
    throw std::invalid_argument(
        "error_sample_split: per-class size must be even, got " +
        std::to_string(n));
  }
  if (n < 4) {
    throw std::invalid_argument(
        "error_sample_split: needs >= 4 points per class, got " +
        std::to_string(n));
  }
  const std::size_t half = n / 2;
  const Matrix train_x = rows_block(data.x, 0, half);
  const Matrix train_y = rows_block(data.y, 0, half);
  const TrainedClassifier clf = train_lda(train_x, train_y, sigma);
  const std::size_t wrong0 = count_predicted_one(clf, data.x, half, half);
  const std::size_t wrong1 =
      half - count_predicted_one(clf, data.y, half, half);
  return from_counts(wrong0, wrong1, half, "split");
}

ErrorEstimate error_loo(const TwoSampleData& data, const SpdMatrix& sigma) {
  validate_two_sample(data);
  const std::size_t n = data.x.rows;
  const std::size_t d = data.x.cols;
  if (n < 2) {
    throw std::invalid_argument(
        "error_loo: needs >= 2 points per class, got " + std::to_string(n));
  }
  if (sigma.dim() != d) {
    throw std::invalid_argument("error_loo: sigma dimension mismatch");
  }

  std::vector<double> mean_x(d, 0.0), mean_y(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(1.0, data.x.row(i), mean_x.data(), d);
    kernels::axpy(1.0, data.y.row(i), mean_y.data(), d);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    mean_x[j] *= inv_n;
    mean_y[j] *= inv_n;
  }

  // Dropping row i rescales the mean: mu_drop = (n*mu - row_i) / (n-1).
  const double inv_n1 = 1.0 / static_cast<double>(n - 1);
  std::vector<double> mu_drop(d), delta(d), mid(d);
  std::size_t wrong0 = 0, wrong1 = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.x.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      mu_drop[j] = (static_cast<double>(n) * mean_x[j] - row[j]) * inv_n1;
      delta[j] = mean_y[j] - mu_drop[j];
      mid[j] = 0.5 * (mu_drop[j] + mean_y[j]);
    }
    const std::vector<double> w = sigma.solve(delta);
    const double score =
        kernels::dot(w.data(), row, d) - kernels::dot(w.data(), mid.data(), d);
    if (score > 0.0) ++wrong0;  // class-0 point predicted 1
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.y.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      mu_drop[j] = (static_cast<double>(n) * mean_y[j] - row[j]) * inv_n1;
      delta[j] = mu_drop[j] - mean_x[j];
      mid[j] = 0.5 * (mean_x[j] + mu_drop[j]);
    }
    const std::vector<double> w = sigma.solve(delta);
    const double score =
        kernels::dot(w.data(), row, d) - kernels::dot(w.data(), mid.data(), d);
    if (!(score > 0.0)) ++wrong1;  // class-1 point predicted 0
  }
  return from_counts(wrong0, wrong1, n, "loo");
}

ErrorEstimate error_resub(const TwoSampleData& data, const SpdMatrix& sigma) {
  validate_two_sample(data);
  const std::size_t n = data.x.rows;
  const TrainedClassifier clf = train_lda(data.x, data.y, sigma);
  const std::size_t wrong0 = count_predicted_one(clf, data.x, 0, n);
  const std::size_t wrong1 = n - count_predicted_one(clf, data.y, 0, n);
  return from_counts(wrong0, wrong1, n, "resub");
}

}  // namespace acclab
