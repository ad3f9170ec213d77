#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dinaq/patterns.hpp"
#include "dinaq/rng.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

/// Gamma(shape, rate) draw (Marsaglia-Tsang).
double sample_gamma(double shape, double rate, Rng& rng);

/// Dirichlet draw built from normalized Gamma(alpha_m, 1) variates.
SimplexVector sample_dirichlet(std::span<const double> alphas, Rng& rng);

/// Beta(a, b) draw as a ratio of Gamma variates.
double sample_beta(double a, double b, Rng& rng);

/// Beta(a, b) draw restricted to (0, upper) by inverse transform sampling:
/// u ~ Uniform(0, F(upper)), return F^{-1}(u). When F(upper) underflows to
/// zero the draw degenerates; upper/2 is returned and a process-wide
/// degeneracy counter is bumped so callers can detect stalled chains.
double sample_beta_truncated(double a, double b, double upper, Rng& rng);

std::uint64_t truncated_beta_degeneracy_count();
void reset_truncated_beta_degeneracy_count();

/// Single draw from a discrete distribution by partitioning (0, 1) into
/// subintervals of the CDF and locating one uniform variate.
PatternIndex sample_categorical(std::span<const double> probs, Rng& rng);

}  // namespace dinaq
