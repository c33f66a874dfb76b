#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "acclab/kernels.hpp"
#include "acclab/rng.hpp"

using namespace acclab;

namespace {

std::vector<double> random_vector(RandomStream& g, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = g.next_gaussian();
  return v;
}

}  // namespace

TEST_CASE("scalar dot matches hand values") {
  const double a[] = {1.0, 2.0, 3.0};
  const double b[] = {4.0, -5.0, 6.0};
  CHECK(kernels::scalar::dot(a, b, 3) == 12.0);  // 4 - 10 + 18
  CHECK(kernels::scalar::dot(a, b, 0) == 0.0);
  CHECK(kernels::scalar::dot(a, b, 1) == 4.0);
}

TEST_CASE("scalar axpy and add_sq_diff match hand values") {
  const double x[] = {1.0, -2.0, 0.5};
  double y[] = {10.0, 10.0, 10.0};
  kernels::scalar::axpy(2.0, x, y, 3);
  CHECK(y[0] == 12.0);
  CHECK(y[1] == 6.0);
  CHECK(y[2] == 11.0);

  const double c[] = {0.0, 1.0, 2.0};
  double acc[] = {1.0, 0.0, 0.0};
  kernels::scalar::add_sq_diff(x, c, acc, 3);
  CHECK(acc[0] == 2.0);   // 1 + 1^2
  CHECK(acc[1] == 9.0);   // (-3)^2
  CHECK(acc[2] == 2.25);  // (-1.5)^2
}

TEST_CASE("active backend is a known implementation") {
  const auto name = kernels::active_backend();
  CHECK((name == "scalar" || name == "avx2"));
  const auto backends = kernels::available_backends();
  REQUIRE(!backends.empty());
  CHECK(backends.front().name == "scalar");
}

TEST_CASE("all available backends are bit-identical to the scalar reference") {
  RandomStream g(SeedSpec{42, 0});
  for (const std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4},
                              std::size_t{17}, std::size_t{128},
                              std::size_t{601}}) {
    const std::vector<double> a = random_vector(g, n);
    const std::vector<double> b = random_vector(g, n);
    const double ref_dot = kernels::scalar::dot(a.data(), b.data(), n);
    for (const auto& backend : kernels::available_backends()) {
      CHECK(backend.dot(a.data(), b.data(), n) == ref_dot);

      std::vector<double> y_ref = b, y_got = b;
      kernels::scalar::axpy(0.37, a.data(), y_ref.data(), n);
      backend.axpy(0.37, a.data(), y_got.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y_got[i] == y_ref[i]);

      std::vector<double> acc_ref(n, 0.25), acc_got(n, 0.25);
      kernels::scalar::add_sq_diff(a.data(), b.data(), acc_ref.data(), n);
      backend.add_sq_diff(a.data(), b.data(), acc_got.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(acc_got[i] == acc_ref[i]);
    }
  }
}

TEST_CASE("dispatched entry points agree with the scalar reference") {
  RandomStream g(SeedSpec{7, 0});
  const std::size_t n = 229;
  const std::vector<double> a = random_vector(g, n);
  const std::vector<double> b = random_vector(g, n);
  CHECK(kernels::dot(a.data(), b.data(), n) ==
        kernels::scalar::dot(a.data(), b.data(), n));
  std::vector<double> y_ref = b, y_got = b;
  kernels::scalar::axpy(-1.5, a.data(), y_ref.data(), n);
  kernels::axpy(-1.5, a.data(), y_got.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(y_got[i] == y_ref[i]);
}
