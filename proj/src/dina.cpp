#include "dinaq/dina.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dinaq/errors.hpp"
#include "dinaq/patterns.hpp"

namespace dinaq {

std::uint8_t eta(std::span<const std::uint8_t> alpha_row, std::span<const std::uint8_t> q_row) {
  if (alpha_row.size() != q_row.size()) {
    throw InvalidInputError("eta: attribute and Q-row lengths differ");
  }
  for (std::size_t k = 0; k < q_row.size(); ++k) {
    if (q_row[k] != 0 && alpha_row[k] == 0) return 0;
  }
  return 1;
}

double response_prob(std::uint8_t eta_val, double guess, double slip) {
  return eta_val != 0 ? 1.0 - slip : guess;
}

double examinee_pattern_loglik(std::span<const std::uint8_t> y_row,
                               std::span<const std::uint8_t> pattern, const QMatrix& q,
                               const ItemParams& params) {
  if (y_row.size() != q.items() || pattern.size() != q.attributes()) {
    throw InvalidInputError("examinee_pattern_loglik: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < q.items(); ++j) {
    const double p = response_prob(eta(pattern, q.row(j)), params.guess[j], params.slip[j]);
    total += y_row[j] != 0 ? std::log(p) : std::log1p(-p);
  }
  return total;
}

double item_row_loglik(std::span<const std::uint8_t> y_col,
                       std::span<const std::uint8_t> q_row_candidate,
                       const AttributeMatrix& alpha, double guess, double slip) {
  if (y_col.size() != alpha.examinees() || q_row_candidate.size() != alpha.attributes()) {
    throw InvalidInputError("item_row_loglik: dimension mismatch");
  }
  // eta splits examinees into two groups; only the four counts matter.
  std::size_t mastery_correct = 0;
  std::size_t mastery_incorrect = 0;
  std::size_t lacking_correct = 0;
  std::size_t lacking_incorrect = 0;
  for (std::size_t i = 0; i < alpha.examinees(); ++i) {
    const bool ideal = eta(alpha.row(i), q_row_candidate) != 0;
    const bool correct = y_col[i] != 0;
    if (ideal) {
      (correct ? mastery_correct : mastery_incorrect) += 1;
    } else {
      (correct ? lacking_correct : lacking_incorrect) += 1;
    }
  }
  auto weighted = [](std::size_t n, double log_p) {
    return n == 0 ? 0.0 : static_cast<double>(n) * log_p;
  };
  return weighted(mastery_correct, std::log(1.0 - slip)) +
         weighted(mastery_incorrect, std::log(slip)) +
         weighted(lacking_correct, std::log(guess)) +
         weighted(lacking_incorrect, std::log1p(-guess));
}

PatternItemLogProbs pattern_item_log_probs(const QMatrix& q, const ItemParams& params) {
  if (params.guess.size() != q.items()) {
    throw InvalidInputError("pattern_item_log_probs: item params do not match Q-matrix");
  }
  const int k = static_cast<int>(q.attributes());
  if (k > kMaxAttributes) {
    throw UnsupportedConfigError("pattern_item_log_probs: attribute count exceeds maximum");
  }
  const std::size_t m = std::size_t{1} << k;
  PatternItemLogProbs table;
  table.patterns = m;
  table.items = q.items();
  table.log_correct.resize(m * q.items());
  table.log_incorrect.resize(m * q.items());

  std::vector<PatternIndex> q_masks(q.items());
  for (std::size_t j = 0; j < q.items(); ++j) q_masks[j] = pattern_to_index(q.row(j));

  for (std::size_t code = 0; code < m; ++code) {
    for (std::size_t j = 0; j < q.items(); ++j) {
      const bool ideal = (static_cast<PatternIndex>(code) & q_masks[j]) == q_masks[j];
      const double p = ideal ? 1.0 - params.slip[j] : params.guess[j];
      table.log_correct[code * q.items() + j] = std::log(p);
      table.log_incorrect[code * q.items() + j] = std::log1p(-p);
    }
  }
  return table;
}

double marginal_loglik(const ResponseMatrix& y, const QMatrix& q, const ItemParams& params,
                       std::span<const double> theta) {
  const std::size_t m = std::size_t{1} << q.attributes();
  if (theta.size() != m) {
    throw InvalidInputError("marginal_loglik: theta length must be 2^K");
  }
  if (y.items() != q.items()) throw InvalidInputError("marginal_loglik: item count mismatch");

  const PatternItemLogProbs table = pattern_item_log_probs(q, params);
  std::vector<double> log_theta(m);
  for (std::size_t code = 0; code < m; ++code) {
    log_theta[code] = theta[code] > 0.0 ? std::log(theta[code])
                                        : -std::numeric_limits<double>::infinity();
  }

  double total = 0.0;
  std::vector<double> terms(m);
  for (std::size_t i = 0; i < y.examinees(); ++i) {
    const auto y_row = y.row(i);
    double max_term = -std::numeric_limits<double>::infinity();
    for (std::size_t code = 0; code < m; ++code) {
      double ll = log_theta[code];
      const double* lc = table.log_correct.data() + code * table.items;
      const double* li = table.log_incorrect.data() + code * table.items;
      for (std::size_t j = 0; j < table.items; ++j) ll += y_row[j] != 0 ? lc[j] : li[j];
      terms[code] = ll;
      max_term = std::max(max_term, ll);
    }
    double sum = 0.0;
    for (std::size_t code = 0; code < m; ++code) sum += std::exp(terms[code] - max_term);
    total += max_term + std::log(sum);
  }
  return total;
}

}  // namespace dinaq
