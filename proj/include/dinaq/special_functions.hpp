#pragma once

namespace dinaq {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1). Accurate to ~1e-14 after
/// refinement of the rational initial estimate.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b), the Beta(a, b) CDF.
double beta_cdf(double x, double a, double b);

/// Inverse of beta_cdf in x for fixed (a, b): safeguarded Newton inside a
/// bisection bracket, absolute tolerance well below 1e-10.
double beta_quantile(double p, double a, double b);

}  // namespace dinaq
