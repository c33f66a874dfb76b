#pragma once

#include <cstddef>
#include <vector>

namespace acclab {

// Minimal row-major dense matrix used for data sets and triangular factors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows*cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* row(std::size_t i) noexcept { return data.data() + i * cols; }
  const double* row(std::size_t i) const noexcept {
    return data.data() + i * cols;
  }
  double& at(std::size_t i, std::size_t j) noexcept {
    return data[i * cols + j];
  }
  double at(std::size_t i, std::size_t j) const noexcept {
    return data[i * cols + j];
  }
};

}  // namespace acclab
