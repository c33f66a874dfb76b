// AVX2 kernel variants. This file is the only translation unit compiled with
// -mavx2; callers reach it through the runtime dispatch table. Each kernel
// mirrors the scalar reference operation-for-operation (separate multiply and
// add, lane-blocked accumulation, same combine order) so that scalar and avx2
// backends return bit-identical results.
#include <immintrin.h>

#include <cstddef>

namespace acclab::kernels::avx2 {

bool supported() noexcept { return __builtin_cpu_supports("avx2"); }

double dot(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, p);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(c + i));
    const __m256d va = _mm256_add_pd(_mm256_loadu_pd(acc + i),
                                     _mm256_mul_pd(d, d));
    _mm256_storeu_pd(acc + i, va);
  }
  for (; i < n; ++i) {
    const double d = x[i] - c[i];
    acc[i] += d * d;
  }
}

}  // namespace acclab::kernels::avx2
