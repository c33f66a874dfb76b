#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Dense double-precision kernels used by the hot simulation loops.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant. The implementation is picked once per
// process: ACCLAB_KERNELS=scalar|avx2 overrides the cpuid-based default
// (an unavailable request falls back to scalar).
namespace acclab::kernels {

// Inner product sum_i a[i]*b[i].
double dot(const double* a, const double* b, std::size_t n) noexcept;

// y[i] += alpha * x[i].
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

// acc[i] += (x[i] - c[i])^2.
void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept;

// Name of the implementation the dispatched entry points use.
std::string_view active_backend() noexcept;

// One selectable implementation set.
struct Backend {
  std::string_view name;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*add_sq_diff)(const double*, const double*, double*,
                      std::size_t) noexcept;
};

// Backends usable on this machine; index 0 is always the scalar reference.
std::vector<Backend> available_backends();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept;
}  // namespace scalar

}  // namespace acclab::kernels
