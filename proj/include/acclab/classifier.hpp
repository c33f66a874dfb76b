#pragma once

#include <cstddef>
#include <vector>

#include "acclab/matrix.hpp"
#include "acclab/problem.hpp"
#include "acclab/spd.hpp"

namespace acclab {

enum class ClassifierKind { lda_known_sigma, naive_bayes };

// Linear rule: predict 1 iff weight'(z - midpoint) > 0, ties -> 0.
struct TrainedClassifier {
  std::vector<double> weight;
  std::vector<double> midpoint;
  ClassifierKind kind = ClassifierKind::lda_known_sigma;
  std::size_t train_size_per_class = 0;
};

// Class-conditional misclassification probabilities of a linear rule.
struct ConditionalError {
  double e1 = 0.0;  // P(predict 1 | class 0)
  double e2 = 0.0;  // P(predict 0 | class 1)
  double e = 0.0;   // (e1 + e2) / 2
};

// Fisher's rule with known covariance: weight = solve(sigma, mu1hat - mu0hat),
// midpoint = (mu0hat + mu1hat)/2 from the class sample means.
TrainedClassifier train_lda(const Matrix& x, const Matrix& y,
                            const SpdMatrix& sigma);

// Diagonal-covariance variant: weight_j = (mu1hat - mu0hat)_j / s_j with s_j
// the pooled per-feature variance (denominator 2n-2). Throws a
// degenerate-variance error naming the feature when some s_j collapses to 0.
TrainedClassifier train_nb(const Matrix& x, const Matrix& y);

// Pooled within-class per-feature variance, denominator 2n-2; throws the
// same degenerate-variance error as train_nb when a feature is constant.
std::vector<double> pooled_feature_variance(const Matrix& x, const Matrix& y);

int predict(const TrainedClassifier& clf, const double* z, std::size_t d);
int predict(const TrainedClassifier& clf, const std::vector<double>& z);

// Exact error probabilities of clf on the Gaussian pair described by spec:
// the decision score is Gaussian under each class, so both error rates are
// normal tail probabilities; weight == 0 returns {0, 1, 1/2} by convention.
ConditionalError conditional_error(const TrainedClassifier& clf,
                                   const ProblemSpec& spec);

// Closed-form expected LDA error in the proportional-dimension asymptotics:
// Phi(-psi^2 / (2*sqrt(psi^2 + 2d/n))) for n training points per class.
double expected_error_raudys(double psi, std::size_t n_per_class,
                             std::size_t d);

}  // namespace acclab
