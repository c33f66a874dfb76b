#include "acclab/testing.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "acclab/classifier.hpp"
#include "acclab/estimators.hpp"
#include "acclab/kernels.hpp"
#include "acclab/normal.hpp"

namespace acclab {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

std::vector<double> mean_difference(const TwoSampleData& data) {
  validate_two_sample(data);
  const std::size_t d = data.x.cols;
  std::vector<double> m0(d, 0.0), m1(d, 0.0);
  for (std::size_t i = 0; i < data.x.rows; ++i) {
    kernels::axpy(1.0, data.x.row(i), m0.data(), d);
  }
  for (std::size_t i = 0; i < data.y.rows; ++i) {
    kernels::axpy(1.0, data.y.row(i), m1.data(), d);
  }
  std::vector<double> delta(d);
  for (std::size_t j = 0; j < d; ++j) {
    delta[j] = m0[j] / static_cast<double>(data.x.rows) -
               m1[j] / static_cast<double>(data.y.rows);
  }
  return delta;
}

struct RankDecision {
  double p_value = 1.0;
  double threshold = std::numeric_limits<double>::infinity();
  bool reject = false;
};

// Ranks the observed statistic among the permuted ones. The exceedance
// budget K is the largest count whose p-value still clears alpha; the
// threshold is then the (K+1)-th largest permuted value, making
// reject <=> observed > threshold <=> p_value <= alpha all agree.
RankDecision rank_decision(double observed, std::vector<double> permuted,
                           double alpha) {
  const std::size_t count_p = permuted.size();
  std::size_t exceed = 0;
  for (const double t : permuted) {
    if (t >= observed) ++exceed;
  }
  RankDecision out;
  out.p_value =
      (1.0 + static_cast<double>(exceed)) / (static_cast<double>(count_p) + 1.0);
  out.reject = out.p_value <= alpha;

  std::ptrdiff_t budget = -1;
  while (budget + 1 < static_cast<std::ptrdiff_t>(count_p) &&
         (static_cast<double>(budget) + 2.0) /
                 (static_cast<double>(count_p) + 1.0) <=
             alpha) {
    ++budget;
  }
  if (budget >= 0) {
    auto nth = permuted.begin() + budget;
    std::nth_element(permuted.begin(), nth, permuted.end(),
                     std::greater<double>());
    out.threshold = *nth;
  }
  return out;
}

void require_perm_config(const PermutationConfig& cfg) {
  if (cfg.p < 1) {
    throw std::invalid_argument("PermutationConfig: p must be >= 1");
  }
}

std::vector<std::size_t> iota_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace

double stat_split_accuracy(const TwoSampleData& data, const SpdMatrix& sigma) {
  const ErrorEstimate est = error_sample_split(data, sigma);
  const double n = static_cast<double>(data.x.rows);
  return std::sqrt(2.0 * n) * (0.5 - est.e_hat);
}

double stat_hotelling(const TwoSampleData& data, const SpdMatrix& sigma) {
  const std::vector<double> delta = mean_difference(data);
  if (sigma.dim() != delta.size()) {
    throw std::invalid_argument("stat_hotelling: sigma dimension mismatch");
  }
  const std::vector<double> z = sigma.forward_solve(delta);
  return kernels::dot(z.data(), z.data(), z.size());
}

double stat_sd(const TwoSampleData& data) {
  const std::vector<double> delta = mean_difference(data);
  const std::vector<double> var = pooled_feature_variance(data.x, data.y);
  double t = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    t += delta[j] * delta[j] / var[j];
  }
  return t;
}

TestOutcome test_split_accuracy(const TwoSampleData& data,
                                const SpdMatrix& sigma, double alpha) {
  require_alpha(alpha);
  TestOutcome out;
  out.statistic = stat_split_accuracy(data, sigma);
  out.threshold = std_normal_quantile(1.0 - alpha);
  out.reject = out.statistic > out.threshold;
  out.p_value = std_normal_cdf(-out.statistic);
  out.alpha = alpha;
  out.scheme = "split-accuracy";
  return out;
}

TestOutcome perm_test_direct(const StatFn& stat, const TwoSampleData& data,
                             const PermutationConfig& cfg, double alpha) {
  require_alpha(alpha);
  require_perm_config(cfg);
  validate_two_sample(data);
  const double observed = stat(data);

  const std::size_t n = data.x.rows;
  const std::size_t d = data.x.cols;
  std::vector<const double*> bag(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    bag[i] = data.x.row(i);
    bag[n + i] = data.y.row(i);
  }

  TwoSampleData permuted{Matrix(n, d), Matrix(n, d)};
  std::vector<double> stats(cfg.p);
  std::vector<std::size_t> order = iota_order(2 * n);
  for (std::size_t k = 0; k < cfg.p; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream stream(cfg.seed, 1 + k);
    stream.shuffle(order);
    for (std::size_t i = 0; i < n; ++i) {
      std::memcpy(permuted.x.row(i), bag[order[i]], d * sizeof(double));
      std::memcpy(permuted.y.row(i), bag[order[n + i]], d * sizeof(double));
    }
    stats[k] = stat(permuted);
  }

  const RankDecision rank = rank_decision(observed, std::move(stats), alpha);
  TestOutcome out;
  out.statistic = observed;
  out.threshold = rank.threshold;
  out.reject = rank.reject;
  out.p_value = rank.p_value;
  out.alpha = alpha;
  out.scheme = "perm-direct";
  return out;
}

TestOutcome perm_test_hotelling(const TwoSampleData& data,
                                const SpdMatrix& sigma,
                                const PermutationConfig& cfg, double alpha) {
  TestOutcome out = perm_test_direct(
      [&sigma](const TwoSampleData& d) { return stat_hotelling(d, sigma); },
      data, cfg, alpha);
  out.scheme = "hotelling";
  return out;
}

TestOutcome perm_test_sd(const TwoSampleData& data,
                         const PermutationConfig& cfg, double alpha) {
  TestOutcome out = perm_test_direct(
      [](const TwoSampleData& d) { return stat_sd(d); }, data, cfg, alpha);
  out.scheme = "sd";
  return out;
}

TestOutcome perm_test_method1(const TwoSampleData& data,
                              const SpdMatrix& sigma,
                              const PermutationConfig& cfg, double alpha) {
  require_alpha(alpha);
  require_perm_config(cfg);
  // Shares the split-error code path; enforces even n >= 4 as a side effect.
  const double observed = 1.0 - error_sample_split(data, sigma).e_hat;

  const std::size_t n = data.x.rows;
  const std::size_t d = data.x.cols;
  const std::size_t half = n / 2;
  Matrix train_x(half, d), train_y(half, d);
  std::memcpy(train_x.data.data(), data.x.row(0), half * d * sizeof(double));
  std::memcpy(train_y.data.data(), data.y.row(0), half * d * sizeof(double));
  const TrainedClassifier clf = train_lda(train_x, train_y, sigma);

  // Scores of the fixed rule on the held-out bag [x second half, y second
  // half]; relabeling only permutes which scores count as which class.
  const double offset =
      kernels::dot(clf.weight.data(), clf.midpoint.data(), d);
  std::vector<double> score(n);
  for (std::size_t i = 0; i < half; ++i) {
    score[i] = kernels::dot(clf.weight.data(), data.x.row(half + i), d) - offset;
    score[half + i] =
        kernels::dot(clf.weight.data(), data.y.row(half + i), d) - offset;
  }

  std::vector<double> stats(cfg.p);
  std::vector<std::size_t> order = iota_order(n);
  for (std::size_t k = 0; k < cfg.p; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream stream(cfg.seed, 1 + k);
    stream.shuffle(order);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < half; ++i) {
      if (!(score[order[i]] > 0.0)) ++correct;  // relabeled class 0
    }
    for (std::size_t i = half; i < n; ++i) {
      if (score[order[i]] > 0.0) ++correct;  // relabeled class 1
    }
    stats[k] = static_cast<double>(correct) / static_cast<double>(n);
  }

  const RankDecision rank = rank_decision(observed, std::move(stats), alpha);
  TestOutcome out;
  out.statistic = observed;
  out.threshold = rank.threshold;
  out.reject = rank.reject;
  out.p_value = rank.p_value;
  out.alpha = alpha;
  out.scheme = "perm-method1";
  return out;
}

namespace detail {

double method2_accuracy_for_order(const TwoSampleData& data,
                                  const SpdMatrix& sigma,
                                  const std::vector<std::size_t>& order) {
  validate_two_sample(data);
  const std::size_t n = data.x.rows;
  const std::size_t d = data.x.cols;
  const std::size_t half = n / 2;
  if (n % 2 != 0 || order.size() != 2 * n) {
    throw std::invalid_argument(
        "method2_accuracy_for_order: order must cover all 2n rows, n even");
  }
  // Bag layout [x first half, y first half, x second half, y second half]:
  // the identity order reproduces the observed train/evaluate split.
  std::vector<const double*> bag(2 * n);
  for (std::size_t i = 0; i < half; ++i) {
    bag[i] = data.x.row(i);
    bag[half + i] = data.y.row(i);
    bag[n + i] = data.x.row(half + i);
    bag[n + half + i] = data.y.row(half + i);
  }
  TwoSampleData rearranged{Matrix(n, d), Matrix(n, d)};
  for (std::size_t i = 0; i < half; ++i) {
    std::memcpy(rearranged.x.row(i), bag[order[i]], d * sizeof(double));
    std::memcpy(rearranged.y.row(i), bag[order[half + i]], d * sizeof(double));
    std::memcpy(rearranged.x.row(half + i), bag[order[n + i]],
                d * sizeof(double));
    std::memcpy(rearranged.y.row(half + i), bag[order[n + half + i]],
                d * sizeof(double));
  }
  return 1.0 - error_sample_split(rearranged, sigma).e_hat;
}

}  // namespace detail

TestOutcome perm_test_method2(const TwoSampleData& data,
                              const SpdMatrix& sigma,
                              const PermutationConfig& cfg, double alpha) {
  require_alpha(alpha);
  require_perm_config(cfg);
  const double observed = 1.0 - error_sample_split(data, sigma).e_hat;

  const std::size_t n = data.x.rows;
  std::vector<double> stats(cfg.p);
  std::vector<std::size_t> order = iota_order(2 * n);
  for (std::size_t k = 0; k < cfg.p; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream stream(cfg.seed, 1 + k);
    stream.shuffle(order);
    stats[k] = detail::method2_accuracy_for_order(data, sigma, order);
  }

  const RankDecision rank = rank_decision(observed, std::move(stats), alpha);
  TestOutcome out;
  out.statistic = observed;
  out.threshold = rank.threshold;
  out.reject = rank.reject;
  out.p_value = rank.p_value;
  out.alpha = alpha;
  out.scheme = "perm-method2";
  return out;
}

}  // namespace acclab
