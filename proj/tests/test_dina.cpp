#include "doctest.h"

#include <cmath>
#include <vector>

#include "dinaq/dina.hpp"
#include "dinaq/errors.hpp"
#include "dinaq/patterns.hpp"
#include "dinaq/rng.hpp"
#include "support/oracles.hpp"

using namespace dinaq;
using namespace testsupport;

namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> vs) {
  std::vector<std::uint8_t> out;
  for (int v : vs) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

ItemParams constant_params(std::size_t items, double g, double s) {
  return ItemParams{std::vector<double>(items, g), std::vector<double>(items, s)};
}

}  // namespace

TEST_CASE("eta is the componentwise dominance indicator") {
  CHECK(eta(bits({1, 1, 0}), bits({1, 0, 0})) == 1);
  CHECK(eta(bits({1, 1, 0}), bits({0, 0, 1})) == 0);
  CHECK(eta(bits({1, 1, 1, 1}), bits({1, 1, 1, 1})) == 1);
  CHECK_THROWS_AS(eta(bits({1, 0}), bits({1, 0, 0})), InvalidInputError);

  // Exhaustive check against the definition for K up to 6.
  for (int k = 1; k <= 6; ++k) {
    const PatternTable patterns = enumerate_attribute_patterns(k);
    for (const auto& alpha : patterns.rows) {
      for (const auto& q_row : patterns.rows) {
        bool dominates = true;
        for (int a = 0; a < k; ++a) {
          if (q_row[static_cast<std::size_t>(a)] > alpha[static_cast<std::size_t>(a)]) {
            dominates = false;
          }
        }
        CHECK(eta(alpha, q_row) == (dominates ? 1 : 0));
      }
    }
  }
}

TEST_CASE("response_prob returns exactly guess or 1 - slip") {
  CHECK(response_prob(1, 0.2, 0.2) == doctest::Approx(0.8));
  CHECK(response_prob(0, 0.2, 0.2) == doctest::Approx(0.2));
  CHECK(response_prob(0, 0.0, 0.0) == 0.0);
  CHECK(response_prob(1, 0.0, 0.0) == 1.0);

  // Monotonicity makes mastery strictly more likely to succeed.
  for (double g : {0.05, 0.2, 0.4}) {
    for (double s : {0.05, 0.2, 0.4}) {
      CHECK(response_prob(1, g, s) > response_prob(0, g, s));
    }
  }
}

TEST_CASE("examinee_pattern_loglik hand cases") {
  SUBCASE("all correct under full mastery") {
    BinaryMatrix qm(15, 4);
    for (std::size_t j = 0; j < 15; ++j) qm(j, j % 4) = 1;
    const QMatrix q(std::move(qm));
    const ItemParams params = constant_params(15, 0.2, 0.2);
    const std::vector<std::uint8_t> y(15, 1);
    const std::vector<std::uint8_t> pattern(4, 1);
    CHECK(examinee_pattern_loglik(y, pattern, q, params) ==
          doctest::Approx(15.0 * std::log(0.8)).epsilon(1e-12));
  }
  SUBCASE("all incorrect under no mastery") {
    BinaryMatrix qm(15, 4);
    for (std::size_t j = 0; j < 15; ++j) qm(j, j % 4) = 1;
    const QMatrix q(std::move(qm));
    const ItemParams params = constant_params(15, 0.2, 0.2);
    const std::vector<std::uint8_t> y(15, 0);
    const std::vector<std::uint8_t> pattern(4, 0);
    // Every item misses a required attribute, and every failure has
    // probability 1 - guess = 0.8.
    CHECK(examinee_pattern_loglik(y, pattern, q, params) ==
          doctest::Approx(15.0 * std::log(0.8)).epsilon(1e-12));
  }
  SUBCASE("two-item mixed case equals the per-item sum") {
    const QMatrix q(BinaryMatrix::from_rows({{1, 0}, {1, 1}}));
    ItemParams params;
    params.guess = {0.15, 0.25};
    params.slip = {0.1, 0.3};
    const auto y = bits({1, 0});
    const auto pattern = bits({1, 0});
    // Item 1: eta=1, correct: log(0.9). Item 2: eta=0, incorrect: log(0.75).
    CHECK(examinee_pattern_loglik(y, pattern, q, params) ==
          doctest::Approx(std::log(0.9) + std::log(0.75)).epsilon(1e-12));
  }
}

TEST_CASE("item_row_loglik") {
  SUBCASE("single mastery examinee") {
    const AttributeMatrix alpha(BinaryMatrix::from_rows({{1, 1}}));
    const auto y_col = bits({1});
    CHECK(item_row_loglik(y_col, bits({1, 0}), alpha, 0.2, 0.25) ==
          doctest::Approx(std::log(0.75)).epsilon(1e-12));
  }
  SUBCASE("full mastery makes all candidates equivalent") {
    const AttributeMatrix alpha(BinaryMatrix(4, 3, 1));
    const auto y_col = bits({1, 0, 1, 1});
    const PatternTable candidates = enumerate_q_row_patterns(3);
    const double first = item_row_loglik(y_col, candidates[0], alpha, 0.2, 0.2);
    for (const auto& row : candidates.rows) {
      CHECK(item_row_loglik(y_col, row, alpha, 0.2, 0.2) == doctest::Approx(first));
    }
  }
  SUBCASE("toy case against the naive product oracle") {
    const AttributeMatrix alpha(
        BinaryMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}, {0, 0}}));
    const auto y_col = bits({1, 0, 1, 1});
    const double g = 0.3;
    const double s = 0.15;
    const QMatrix q_one(BinaryMatrix::from_rows({{1, 0}}));
    ItemParams params;
    params.guess = {g};
    params.slip = {s};
    for (const auto& candidate : enumerate_q_row_patterns(2).rows) {
      BinaryMatrix cand_m(1, 2);
      cand_m.set_row(0, candidate);
      const QMatrix q_cand(std::move(cand_m));
      double log_prob = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const std::vector<std::uint8_t> y_row{y_col[i]};
        log_prob +=
            std::log(naive_row_likelihood(y_row, alpha.row(i), q_cand, params));
      }
      CHECK(item_row_loglik(y_col, candidate, alpha, g, s) ==
            doctest::Approx(log_prob).epsilon(1e-10));
    }
  }
}

TEST_CASE("marginal_loglik") {
  SUBCASE("single item, single attribute") {
    const QMatrix q(BinaryMatrix::from_rows({{1}}));
    const ItemParams params = constant_params(1, 0.2, 0.2);
    const ResponseMatrix y(BinaryMatrix::from_rows({{1}}));
    const std::vector<double> theta{0.5, 0.5};
    CHECK(marginal_loglik(y, q, params, theta) ==
          doctest::Approx(std::log(0.5)).epsilon(1e-12));
  }
  SUBCASE("degenerate theta reduces to the pattern loglik") {
    const QMatrix q(BinaryMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}}));
    const ItemParams params = constant_params(3, 0.25, 0.15);
    const ResponseMatrix y(BinaryMatrix::from_rows({{1, 0, 1}}));
    const std::vector<double> theta{0.0, 0.0, 0.0, 1.0};
    CHECK(marginal_loglik(y, q, params, theta) ==
          doctest::Approx(examinee_pattern_loglik(y.row(0), bits({1, 1}), q, params))
              .epsilon(1e-12));
  }
  SUBCASE("three-examinee toy against direct summation") {
    const QMatrix q(BinaryMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}}));
    ItemParams params;
    params.guess = {0.2, 0.3, 0.1};
    params.slip = {0.1, 0.2, 0.25};
    const ResponseMatrix y(BinaryMatrix::from_rows({{1, 0, 1}, {0, 0, 0}, {1, 1, 1}}));
    const std::vector<double> theta{0.1, 0.2, 0.3, 0.4};

    double direct = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      double prob = 0.0;
      for (PatternIndex code = 0; code < 4; ++code) {
        prob += theta[code] *
                naive_row_likelihood(y.row(i), index_to_pattern(code, 2), q, params);
      }
      direct += std::log(prob);
    }
    CHECK(marginal_loglik(y, q, params, theta) == doctest::Approx(direct).epsilon(1e-10));
  }
  SUBCASE("invariant under simultaneous column and theta permutation") {
    const QMatrix q(BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}));
    ItemParams params;
    params.guess = {0.2, 0.3, 0.1, 0.15};
    params.slip = {0.1, 0.2, 0.25, 0.05};
    const ResponseMatrix y(
        BinaryMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 0, 0}, {1, 1, 1, 0}}));
    std::vector<double> theta{0.05, 0.1, 0.15, 0.2, 0.05, 0.15, 0.1, 0.2};

    const std::vector<int> perm{2, 0, 1};  // new column c = old column perm[c]
    BinaryMatrix qperm(4, 3);
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t c = 0; c < 3; ++c) {
        qperm(j, c) = q(j, static_cast<std::size_t>(perm[c]));
      }
    }
    std::vector<double> theta_perm(8);
    for (PatternIndex code = 0; code < 8; ++code) {
      const auto old_bits = index_to_pattern(code, 3);
      std::vector<std::uint8_t> new_bits(3);
      for (std::size_t c = 0; c < 3; ++c) new_bits[c] = old_bits[static_cast<std::size_t>(perm[c])];
      theta_perm[pattern_to_index(new_bits)] = theta[code];
    }
    CHECK(marginal_loglik(y, QMatrix(std::move(qperm)), params, theta_perm) ==
          doctest::Approx(marginal_loglik(y, q, params, theta)).epsilon(1e-12));
  }
}
