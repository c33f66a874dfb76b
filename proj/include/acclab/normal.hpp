#pragma once

// Standard normal distribution: density, CDF, and quantile.
namespace acclab {

// Density phi(x).
double std_normal_pdf(double x) noexcept;

// CDF Phi(x), computed through erfc for full accuracy in both tails.
double std_normal_cdf(double x) noexcept;

// Quantile Phi^-1(p) for p in (0,1); throws std::domain_error otherwise.
// Rational initial guess polished with one Newton step; absolute error is
// far below the 1e-9 contract everywhere the CDF is invertible in doubles.
double std_normal_quantile(double p);

}  // namespace acclab
