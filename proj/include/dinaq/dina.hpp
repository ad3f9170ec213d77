#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dinaq/matrix.hpp"
#include "dinaq/types.hpp"

namespace dinaq {

/// Ideal response indicator: 1 iff the mastery row dominates the item's
/// requirement row componentwise. An attribute the item does not require
/// contributes nothing (0^0 reads as 1).
std::uint8_t eta(std::span<const std::uint8_t> alpha_row, std::span<const std::uint8_t> q_row);

/// P(correct) for an item: 1 - slip when eta = 1, guess when eta = 0.
double response_prob(std::uint8_t eta_val, double guess, double slip);

/// Log-likelihood of one examinee's response row under a candidate mastery
/// pattern.
double examinee_pattern_loglik(std::span<const std::uint8_t> y_row,
                               std::span<const std::uint8_t> pattern, const QMatrix& q,
                               const ItemParams& params);

/// Log-likelihood of one item's response column under a candidate Q-row,
/// given the current mastery states.
double item_row_loglik(std::span<const std::uint8_t> y_col,
                       std::span<const std::uint8_t> q_row_candidate,
                       const AttributeMatrix& alpha, double guess, double slip);

/// Log-likelihood of the data with mastery integrated out over the pattern
/// probabilities theta (length 2^K), stabilized by log-sum-exp.
double marginal_loglik(const ResponseMatrix& y, const QMatrix& q, const ItemParams& params,
                       std::span<const double> theta);

/// Log response probabilities for every (pattern, item) pair, computed once
/// and reused by the per-pattern sweeps in the sampler and the marginal
/// likelihood. Entry [m * J + j] applies to attribute pattern with decimal
/// code m and item j.
struct PatternItemLogProbs {
  std::size_t patterns = 0;
  std::size_t items = 0;
  std::vector<double> log_correct;
  std::vector<double> log_incorrect;
};

PatternItemLogProbs pattern_item_log_probs(const QMatrix& q, const ItemParams& params);

}  // namespace dinaq
