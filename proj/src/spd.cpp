#include "acclab/spd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "acclab/kernels.hpp"

namespace acclab {

namespace {

void require_vector_dim(const std::vector<double>& v, std::size_t dim,
                        const char* what) {
  if (v.size() != dim) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(dim) + ", got " +
                                std::to_string(v.size()));
  }
}

}  // namespace

SpdMatrix::SpdMatrix(std::size_t dim, std::vector<double> entries) {
  if (dim == 0) throw std::invalid_argument("SpdMatrix: dim must be >= 1");
  if (entries.size() != dim * dim) {
    throw std::invalid_argument(
        "SpdMatrix: entry count " + std::to_string(entries.size()) +
        " does not match dim " + std::to_string(dim));
  }
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("SpdMatrix: entries must be finite");
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double a = entries[i * dim + j];
      const double b = entries[j * dim + i];
      const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
      if (std::fabs(a - b) > 1e-12 * scale) {
        throw std::invalid_argument("SpdMatrix: not symmetric at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
    }
  }

  dim_ = dim;
  kind_ = SpdKind::dense;
  entries_ = std::move(entries);
  lower_ = Matrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double s = entries_[j * dim + j] -
               kernels::scalar::dot(lower_.row(j), lower_.row(j), j);
    if (!(s > 0.0)) {
      throw std::invalid_argument(
          "SpdMatrix: not positive definite (leading minor of order " +
          std::to_string(j + 1) + ")");
    }
    const double ljj = std::sqrt(s);
    lower_.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < dim; ++i) {
      lower_.at(i, j) = (entries_[i * dim + j] - kernels::scalar::dot(
                                                     lower_.row(i),
                                                     lower_.row(j), j)) /
                        ljj;
    }
  }
  diag_.resize(dim);
  sqrt_diag_.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    diag_[i] = entries_[i * dim + i];
    sqrt_diag_[i] = std::sqrt(diag_[i]);
  }
}

SpdMatrix SpdMatrix::identity(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("SpdMatrix: dim must be >= 1");
  SpdMatrix m;
  m.dim_ = dim;
  m.kind_ = SpdKind::identity;
  m.diag_.assign(dim, 1.0);
  m.sqrt_diag_.assign(dim, 1.0);
  m.lower_ = Matrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m.lower_.at(i, i) = 1.0;
  return m;
}

SpdMatrix SpdMatrix::diagonal(std::vector<double> diag) {
  if (diag.empty()) throw std::invalid_argument("SpdMatrix: dim must be >= 1");
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (!std::isfinite(diag[i]) || !(diag[i] > 0.0)) {
      throw std::invalid_argument(
          "SpdMatrix: diagonal entry " + std::to_string(i) +
          " must be finite and > 0");
    }
  }
  SpdMatrix m;
  m.dim_ = diag.size();
  m.kind_ = SpdKind::diagonal;
  m.diag_ = std::move(diag);
  m.sqrt_diag_.resize(m.dim_);
  m.lower_ = Matrix(m.dim_, m.dim_);
  for (std::size_t i = 0; i < m.dim_; ++i) {
    m.sqrt_diag_[i] = std::sqrt(m.diag_[i]);
    m.lower_.at(i, i) = m.sqrt_diag_[i];
  }
  return m;
}

double SpdMatrix::entry(std::size_t i, std::size_t j) const noexcept {
  if (kind_ == SpdKind::dense) return entries_[i * dim_ + j];
  return i == j ? diag_[i] : 0.0;
}

std::vector<double> SpdMatrix::multiply(const std::vector<double>& x) const {
  require_vector_dim(x, dim_, "SpdMatrix::multiply");
  std::vector<double> y(dim_);
  switch (kind_) {
    case SpdKind::identity:
      y = x;
      break;
    case SpdKind::diagonal:
      for (std::size_t i = 0; i < dim_; ++i) y[i] = diag_[i] * x[i];
      break;
    case SpdKind::dense:
      for (std::size_t i = 0; i < dim_; ++i) {
        y[i] = kernels::dot(entries_.data() + i * dim_, x.data(), dim_);
      }
      break;
  }
  return y;
}

std::vector<double> SpdMatrix::forward_solve(
    const std::vector<double>& b) const {
  require_vector_dim(b, dim_, "SpdMatrix::forward_solve");
  std::vector<double> z(dim_);
  switch (kind_) {
    case SpdKind::identity:
      z = b;
      break;
    case SpdKind::diagonal:
      for (std::size_t i = 0; i < dim_; ++i) z[i] = b[i] / sqrt_diag_[i];
      break;
    case SpdKind::dense:
      for (std::size_t i = 0; i < dim_; ++i) {
        const double s = kernels::dot(lower_.row(i), z.data(), i);
        z[i] = (b[i] - s) / lower_.at(i, i);
      }
      break;
  }
  return z;
}

std::vector<double> SpdMatrix::solve(const std::vector<double>& b) const {
  require_vector_dim(b, dim_, "SpdMatrix::solve");
  if (kind_ == SpdKind::identity) return b;
  if (kind_ == SpdKind::diagonal) {
    std::vector<double> x(dim_);
    for (std::size_t i = 0; i < dim_; ++i) x[i] = b[i] / diag_[i];
    return x;
  }
  std::vector<double> x = forward_solve(b);
  // Back substitution on L^T x = z, walking column i of the row-major L.
  for (std::size_t ii = dim_; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < dim_; ++k) s -= lower_.at(k, ii) * x[k];
    x[ii] = s / lower_.at(ii, ii);
  }
  return x;
}

const Matrix& cholesky(const SpdMatrix& m) noexcept { return m.chol(); }

std::vector<double> spd_solve(const SpdMatrix& m,
                              const std::vector<double>& b) {
  return m.solve(b);
}

}  // namespace acclab
