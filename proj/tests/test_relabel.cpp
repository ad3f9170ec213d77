#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dinaq/errors.hpp"
#include "dinaq/metrics.hpp"
#include "dinaq/relabel.hpp"
#include "dinaq/rng.hpp"
#include "dinaq/simulate.hpp"

using namespace dinaq;

namespace {

RealMatrix to_real(const BinaryMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t idx = 0; idx < m.data().size(); ++idx) {
    out.data()[idx] = static_cast<double>(m.data()[idx]);
  }
  return out;
}

double frobenius_sq(const BinaryMatrix& draw, const RealMatrix& ref) {
  double total = 0.0;
  for (std::size_t r = 0; r < draw.rows(); ++r) {
    for (std::size_t c = 0; c < draw.cols(); ++c) {
      const double diff = static_cast<double>(draw(r, c)) - ref(r, c);
      total += diff * diff;
    }
  }
  return total;
}

/// Stack of noisy copies of `base` with a random non-identity column
/// permutation injected into a fraction of the draws.
QSampleArray switched_stack(const BinaryMatrix& base, std::size_t draws, double switch_fraction,
                            double flip_prob, Rng& rng) {
  const std::size_t k = base.cols();
  QSampleArray stack;
  stack.reserve(draws);
  for (std::size_t t = 0; t < draws; ++t) {
    BinaryMatrix draw = base;
    for (auto& cell : draw.data()) {
      if (rng.next_uniform() < flip_prob) cell = cell != 0 ? 0 : 1;
    }
    if (rng.next_uniform() < switch_fraction) {
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (std::size_t c = k - 1; c > 0; --c) {
          const std::size_t pick = static_cast<std::size_t>(rng.next_below(c + 1));
          std::swap(perm[c], perm[pick]);
        }
      } while (std::is_sorted(perm.begin(), perm.end()));
      draw = permute_columns(draw, perm);
    }
    stack.push_back(std::move(draw));
  }
  return stack;
}

}  // namespace

TEST_CASE("best_permutation basics") {
  SUBCASE("a draw aligned with its own reference stays put") {
    const BinaryMatrix draw = load_fixture_qmatrix("qmatrix_I").matrix();
    const std::vector<int> perm = best_permutation(draw, to_real(draw));
    for (std::size_t c = 0; c < perm.size(); ++c) CHECK(perm[c] == static_cast<int>(c));
  }
  SUBCASE("a pair with the first and third columns switched maps back at distance zero") {
    const BinaryMatrix first =
        BinaryMatrix::from_rows({{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    const BinaryMatrix second =
        BinaryMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 1}});
    const std::vector<int> perm = best_permutation(second, to_real(first));
    CHECK(perm == std::vector<int>{2, 1, 0});
    CHECK(permute_columns(second, perm) == first);
  }
  SUBCASE("swapped binary columns against a graded reference") {
    RealMatrix reference(6, 2);
    for (std::size_t r = 0; r < 6; ++r) {
      reference(r, 0) = 0.9;
      reference(r, 1) = 0.1;
    }
    BinaryMatrix draw(6, 2);
    for (std::size_t r = 0; r < 6; ++r) {
      draw(r, 0) = 0;
      draw(r, 1) = 1;
    }
    CHECK(best_permutation(draw, reference) == std::vector<int>{1, 0});
  }
  SUBCASE("ties break to the lexicographically smallest permutation") {
    BinaryMatrix draw(3, 3);
    for (std::size_t r = 0; r < 3; ++r) draw(r, 0) = draw(r, 1) = draw(r, 2) = 1;
    RealMatrix reference(3, 3, 0.5);
    const std::vector<int> perm = best_permutation(draw, reference);
    CHECK(perm == std::vector<int>{0, 1, 2});
  }
  SUBCASE("attribute counts beyond the factorial cap are refused") {
    const BinaryMatrix draw(2, 9, 1);
    const RealMatrix reference(2, 9, 0.5);
    CHECK_THROWS_AS(best_permutation(draw, reference), UnsupportedConfigError);
  }
}

TEST_CASE("relabel_pass") {
  const BinaryMatrix base = load_fixture_qmatrix("qmatrix_II").matrix();
  SUBCASE("identical draws are untouched") {
    const QSampleArray draws(20, base);
    const QSampleArray out = relabel_pass(draws, stack_mean(draws));
    CHECK(out == draws);
  }
  SUBCASE("permuted copies snap back onto the base reference") {
    Rng rng(205);
    QSampleArray draws = switched_stack(base, 40, 1.0, 0.0, rng);
    const QSampleArray out = relabel_pass(draws, to_real(base));
    for (const auto& d : out) CHECK(d == base);
  }
  SUBCASE("single-draw stack") {
    const QSampleArray draws(1, base);
    CHECK(relabel_pass(draws, stack_mean(draws)) == draws);
  }
  SUBCASE("a pass never increases the total distance to the reference") {
    Rng rng(207);
    const QSampleArray draws = switched_stack(base, 30, 0.5, 0.1, rng);
    const RealMatrix reference = stack_mean(draws);
    const QSampleArray out = relabel_pass(draws, reference);
    double before = 0.0;
    double after = 0.0;
    for (std::size_t t = 0; t < draws.size(); ++t) {
      before += frobenius_sq(draws[t], reference);
      after += frobenius_sq(out[t], reference);
    }
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("relabel_converge") {
  const QMatrix q_true = load_fixture_qmatrix("qmatrix_II");
  const BinaryMatrix base = q_true.matrix();

  SUBCASE("no switching converges in one round with the raw mean") {
    Rng rng(211);
    const QSampleArray draws = switched_stack(base, 25, 0.0, 0.05, rng);
    const RelabelResult result = relabel_converge(draws);
    CHECK(result.converged);
    CHECK(result.rounds == 1);
    CHECK(result.relabeled == draws);
    CHECK(result.mean_q == stack_mean(draws));
    for (const auto& perm : result.permutations) {
      CHECK(std::is_sorted(perm.begin(), perm.end()));
    }
  }
  SUBCASE("injected column switches are undone and recovery improves") {
    Rng rng(213);
    const QSampleArray draws = switched_stack(base, 200, 0.3, 0.03, rng);
    const RelabelResult result = relabel_converge(draws);
    CHECK(result.converged);
    const double before = recovery_rate({stack_mean(draws)}, q_true);
    const double after = recovery_rate({result.mean_q}, q_true);
    CHECK(after > before);
  }
  SUBCASE("every output draw is a column permutation of its input") {
    Rng rng(217);
    const QSampleArray draws = switched_stack(base, 50, 0.4, 0.05, rng);
    const RelabelResult result = relabel_converge(draws);
    REQUIRE(result.permutations.size() == draws.size());
    for (std::size_t t = 0; t < draws.size(); ++t) {
      std::vector<int> perm = result.permutations[t];
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t c = 0; c < sorted.size(); ++c) CHECK(sorted[c] == static_cast<int>(c));
      CHECK(result.relabeled[t] == permute_columns(draws[t], perm));
    }
  }
  SUBCASE("a global column permutation only permutes the final mean") {
    Rng rng(219);
    const QSampleArray draws = switched_stack(base, 60, 0.25, 0.04, rng);
    const std::vector<int> global{3, 0, 4, 2, 1};
    QSampleArray permuted;
    permuted.reserve(draws.size());
    for (const auto& d : draws) permuted.push_back(permute_columns(d, global));

    const RelabelResult plain = relabel_converge(draws);
    const RelabelResult shifted = relabel_converge(permuted);

    // The recovery-rate multiset over all column permutations of the truth
    // is unchanged by the global relabeling.
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> rates_plain;
    std::vector<double> rates_shifted;
    do {
      const RealMatrix truth_perm = permute_columns(to_real(base), perm);
      // recovery_rate wants a QMatrix truth; rebuild from the permuted base.
      BinaryMatrix tb(base.rows(), base.cols());
      for (std::size_t r = 0; r < tb.rows(); ++r) {
        for (std::size_t c = 0; c < tb.cols(); ++c) {
          tb(r, c) = static_cast<std::uint8_t>(truth_perm(r, c));
        }
      }
      const QMatrix truth(std::move(tb));
      rates_plain.push_back(recovery_rate({plain.mean_q}, truth));
      rates_shifted.push_back(recovery_rate({shifted.mean_q}, truth));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(rates_plain.begin(), rates_plain.end());
    std::sort(rates_shifted.begin(), rates_shifted.end());
    REQUIRE(rates_plain.size() == rates_shifted.size());
    for (std::size_t i = 0; i < rates_plain.size(); ++i) {
      CHECK(rates_plain[i] == doctest::Approx(rates_shifted[i]).epsilon(1e-9));
    }
  }
  SUBCASE("max_rounds must be positive and empty stacks are rejected") {
    CHECK_THROWS_AS(relabel_converge(QSampleArray{}, 5), InvalidInputError);
    CHECK_THROWS_AS(relabel_converge(QSampleArray(3, base), 0), InvalidInputError);
  }
}
