#include "dinaq/distributions.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "dinaq/errors.hpp"
#include "dinaq/special_functions.hpp"

namespace dinaq {

namespace {

std::atomic<std::uint64_t> g_truncation_degeneracies{0};

double sample_standard_gamma(double shape, Rng& rng) {
  if (shape < 1.0) {
    // Boost to shape + 1, then scale back with a uniform power.
    const double x = sample_standard_gamma(shape + 1.0, rng);
    return x * std::pow(rng.next_uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double sample_gamma(double shape, double rate, Rng& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw InvalidInputError("gamma sample: shape and rate must be positive");
  }
  return sample_standard_gamma(shape, rng) / rate;
}

SimplexVector sample_dirichlet(std::span<const double> alphas, Rng& rng) {
  if (alphas.size() < 2) throw InvalidInputError("dirichlet sample: needs at least 2 components");
  SimplexVector draws(alphas.size());
  double total = 0.0;
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    if (!(alphas[m] > 0.0)) {
      throw InvalidInputError("dirichlet sample: concentration parameters must be positive");
    }
    draws[m] = sample_standard_gamma(alphas[m], rng);
    total += draws[m];
  }
  for (double& w : draws) w /= total;
  return draws;
}

double sample_beta(double a, double b, Rng& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidInputError("beta sample: shape parameters must be positive");
  }
  for (;;) {
    const double x = sample_standard_gamma(a, rng);
    const double y = sample_standard_gamma(b, rng);
    if (x + y > 0.0) return x / (x + y);
  }
}

double sample_beta_truncated(double a, double b, double upper, Rng& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidInputError("truncated beta sample: shape parameters must be positive");
  }
  if (!(upper > 0.0) || upper > 1.0) {
    throw InvalidInputError("truncated beta sample: upper bound must lie in (0, 1]");
  }
  const double cdf_upper = beta_cdf(upper, a, b);
  if (cdf_upper <= 0.0) {
    g_truncation_degeneracies.fetch_add(1, std::memory_order_relaxed);
    return upper / 2.0;
  }
  const double u = rng.next_uniform() * cdf_upper;
  double x = beta_quantile(u, a, b);
  if (x >= upper) x = std::nextafter(upper, 0.0);
  if (x <= 0.0) x = std::numeric_limits<double>::min();
  return x;
}

std::uint64_t truncated_beta_degeneracy_count() {
  return g_truncation_degeneracies.load(std::memory_order_relaxed);
}

void reset_truncated_beta_degeneracy_count() {
  g_truncation_degeneracies.store(0, std::memory_order_relaxed);
}

PatternIndex sample_categorical(std::span<const double> probs, Rng& rng) {
  validate_simplex(probs);
  const double u = rng.next_uniform();
  double cumulative = 0.0;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    cumulative += probs[m];
    if (u < cumulative) return static_cast<PatternIndex>(m);
  }
  // u landed beyond the accumulated mass through rounding; take the last
  // category with positive probability.
  for (std::size_t m = probs.size(); m-- > 0;) {
    if (probs[m] > 0.0) return static_cast<PatternIndex>(m);
  }
  throw InternalError("categorical sample: no positive-probability category");
}

}  // namespace dinaq
