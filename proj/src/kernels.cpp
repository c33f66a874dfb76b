#include "acclab/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace acclab::kernels {

namespace scalar {

// Accumulates in four interleaved partial sums, combined as
// (s0+s1)+(s2+s3). Every backend must reproduce this exact order so that
// results are bit-identical no matter which implementation is dispatched.
double dot(const double* a, const double* b, std::size_t n) noexcept {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] += a[i] * b[i];
    lane[1] += a[i + 1] * b[i + 1];
    lane[2] += a[i + 2] * b[i + 2];
    lane[3] += a[i + 3] * b[i + 3];
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - c[i];
    acc[i] += d * d;
  }
}

}  // namespace scalar

#if defined(ACCLAB_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept;
bool supported() noexcept;
}  // namespace avx2
#endif

namespace {

constexpr Backend kScalar{"scalar", &scalar::dot, &scalar::axpy,
                          &scalar::add_sq_diff};

#if defined(ACCLAB_HAVE_AVX2)
constexpr Backend kAvx2{"avx2", &avx2::dot, &avx2::axpy, &avx2::add_sq_diff};
#endif

bool avx2_usable() noexcept {
#if defined(ACCLAB_HAVE_AVX2)
  return avx2::supported();
#else
  return false;
#endif
}

Backend pick() noexcept {
  const char* env = std::getenv("ACCLAB_KERNELS");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return kScalar;
#if defined(ACCLAB_HAVE_AVX2)
  if (avx2_usable() && (want.empty() || want == "avx2")) return kAvx2;
#endif
  return kScalar;
}

const Backend& active() noexcept {
  static const Backend b = pick();
  return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept {
  return active().dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  active().axpy(alpha, x, y, n);
}

void add_sq_diff(const double* x, const double* c, double* acc,
                 std::size_t n) noexcept {
  active().add_sq_diff(x, c, acc, n);
}

std::string_view active_backend() noexcept { return active().name; }

std::vector<Backend> available_backends() {
  std::vector<Backend> out{kScalar};
#if defined(ACCLAB_HAVE_AVX2)
  if (avx2_usable()) out.push_back(kAvx2);
#endif
  return out;
}

}  // namespace acclab::kernels
