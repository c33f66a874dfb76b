#pragma once

#include <cstddef>
#include <vector>

#include "acclab/matrix.hpp"

namespace acclab {

enum class SpdKind { identity, diagonal, dense };

// Symmetric positive-definite covariance matrix. Validation (symmetry,
// positive-definiteness) happens at construction, so every instance is
// usable; the lower Cholesky factor is computed up front and shared freely
// across threads. Identity and diagonal instances keep O(d) storage for the
// hot paths and answer solves without touching the dense factor.
class SpdMatrix {
 public:
  // Dense d x d matrix, row-major entries. Throws std::invalid_argument on
  // shape mismatch, non-finite entries, asymmetry (relative tolerance 1e-12),
  // or a non-positive-definite matrix (the failing leading minor is named).
  SpdMatrix(std::size_t dim, std::vector<double> entries);

  static SpdMatrix identity(std::size_t dim);
  // Diagonal matrix; every entry must be finite and > 0.
  static SpdMatrix diagonal(std::vector<double> diag);

  std::size_t dim() const noexcept { return dim_; }
  SpdKind kind() const noexcept { return kind_; }
  double entry(std::size_t i, std::size_t j) const noexcept;
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& sqrt_diag() const noexcept { return sqrt_diag_; }

  // Lower-triangular L with L L^T = Sigma.
  const Matrix& chol() const noexcept { return lower_; }

  // Sigma * x.
  std::vector<double> multiply(const std::vector<double>& x) const;
  // Solve L z = b (forward substitution).
  std::vector<double> forward_solve(const std::vector<double>& b) const;
  // Solve Sigma x = b.
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  SpdMatrix() = default;

  std::size_t dim_ = 0;
  SpdKind kind_ = SpdKind::identity;
  std::vector<double> entries_;    // dense kind only (row-major)
  std::vector<double> diag_;       // all kinds
  std::vector<double> sqrt_diag_;  // all kinds
  Matrix lower_;                   // all kinds
};

// Free-function views of the same operations.
const Matrix& cholesky(const SpdMatrix& m) noexcept;
std::vector<double> spd_solve(const SpdMatrix& m, const std::vector<double>& b);

}  // namespace acclab
