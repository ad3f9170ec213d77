#include "dinaq/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dinaq/dina.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/relabel.hpp"

namespace dinaq {

namespace {

void check_shapes(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true) {
  if (q_hats.empty()) throw InvalidInputError("recovery rate: needs at least one estimate");
  for (const auto& q_hat : q_hats) {
    if (q_hat.rows() != q_true.items() || q_hat.cols() != q_true.attributes()) {
      throw InvalidInputError("recovery rate: estimate shape does not match the true Q-matrix");
    }
  }
}

double round_entry(double v) { return v >= 0.5 ? 1.0 : 0.0; }

double single_rate(const RealMatrix& q_hat, const QMatrix& q_true, bool rounded) {
  double abs_diff = 0.0;
  for (std::size_t j = 0; j < q_true.items(); ++j) {
    for (std::size_t k = 0; k < q_true.attributes(); ++k) {
      const double est = rounded ? round_entry(q_hat(j, k)) : q_hat(j, k);
      abs_diff += std::abs(est - static_cast<double>(q_true(j, k)));
    }
  }
  const double cells = static_cast<double>(q_true.items() * q_true.attributes());
  return 1.0 - abs_diff / cells;
}

double mean_rate(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true, bool rounded) {
  check_shapes(q_hats, q_true);
  double total = 0.0;
  for (const auto& q_hat : q_hats) total += single_rate(q_hat, q_true, rounded);
  return total / static_cast<double>(q_hats.size());
}

}  // namespace

double recovery_rate(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true) {
  return mean_rate(q_hats, q_true, false);
}

double recovery_rate_rounded(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true) {
  return mean_rate(q_hats, q_true, true);
}

RecoveryReport recovery_report(const std::vector<RealMatrix>& q_hats, const QMatrix& q_true) {
  check_shapes(q_hats, q_true);
  RecoveryReport report;
  report.replications = static_cast<int>(q_hats.size());
  report.delta_q = recovery_rate(q_hats, q_true);
  report.delta_q_rounded = recovery_rate_rounded(q_hats, q_true);
  report.per_entry_error = RealMatrix(q_true.items(), q_true.attributes());
  for (const auto& q_hat : q_hats) {
    for (std::size_t j = 0; j < q_true.items(); ++j) {
      for (std::size_t k = 0; k < q_true.attributes(); ++k) {
        report.per_entry_error(j, k) +=
            std::abs(q_hat(j, k) - static_cast<double>(q_true(j, k)));
      }
    }
  }
  for (double& v : report.per_entry_error.data()) {
    v /= static_cast<double>(report.replications);
  }
  return report;
}

int aic_parameter_count(std::size_t items, std::size_t attributes) {
  return static_cast<int>(2 * items + (std::size_t{1} << attributes) - 1);
}

double aic(const ResponseMatrix& y, const QMatrix& q, const ItemParams& params,
           std::span<const double> theta) {
  const double loglik = marginal_loglik(y, q, params, theta);
  return -2.0 * loglik + 2.0 * aic_parameter_count(q.items(), q.attributes());
}

ParamSummary summarize_sample(std::span<const double> values) {
  if (values.empty()) throw InvalidInputError("summarize: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(sorted.size());

  // Linearly interpolated order statistics.
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
  };
  return ParamSummary{mean, quantile(0.025), quantile(0.975)};
}

DrawSummary summarize_draws(const PosteriorDraws& draws) {
  const std::size_t t = draws.guess_draws.rows();
  if (t == 0 || draws.q_draws.size() != t) {
    throw InvalidInputError("summarize: draw stack is empty or inconsistent");
  }
  DrawSummary summary;
  const std::size_t items = draws.guess_draws.cols();
  const std::size_t m = draws.theta_draws.cols();

  std::vector<double> column(t);
  auto summarize_column = [&](const RealMatrix& mat, std::size_t c) {
    for (std::size_t r = 0; r < t; ++r) column[r] = mat(r, c);
    return summarize_sample(column);
  };

  summary.guess.reserve(items);
  summary.slip.reserve(items);
  for (std::size_t j = 0; j < items; ++j) {
    summary.guess.push_back(summarize_column(draws.guess_draws, j));
    summary.slip.push_back(summarize_column(draws.slip_draws, j));
  }
  summary.theta.reserve(m);
  for (std::size_t code = 0; code < m; ++code) {
    summary.theta.push_back(summarize_column(draws.theta_draws, code));
  }
  summary.mean_q = stack_mean(draws.q_draws);
  return summary;
}

}  // namespace dinaq
