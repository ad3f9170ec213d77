#include "dinaq/relabel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "dinaq/errors.hpp"

namespace dinaq {

namespace {

bool is_identity(const std::vector<int>& perm) {
  for (std::size_t c = 0; c < perm.size(); ++c) {
    if (perm[c] != static_cast<int>(c)) return false;
  }
  return true;
}

void check_stack(const QSampleArray& draws) {
  if (draws.empty()) throw InvalidInputError("relabel: empty draw stack");
  const std::size_t rows = draws.front().rows();
  const std::size_t cols = draws.front().cols();
  for (const auto& d : draws) {
    if (d.rows() != rows || d.cols() != cols) {
      throw InvalidInputError("relabel: draws have inconsistent shapes");
    }
  }
}

}  // namespace

RealMatrix stack_mean(const QSampleArray& draws) {
  check_stack(draws);
  RealMatrix mean(draws.front().rows(), draws.front().cols());
  for (const auto& d : draws) {
    for (std::size_t idx = 0; idx < mean.data().size(); ++idx) {
      mean.data()[idx] += d.data()[idx];
    }
  }
  for (double& v : mean.data()) v /= static_cast<double>(draws.size());
  return mean;
}

std::vector<int> best_permutation(const BinaryMatrix& draw, const RealMatrix& reference) {
  if (draw.rows() != reference.rows() || draw.cols() != reference.cols()) {
    throw InvalidInputError("best_permutation: shape mismatch");
  }
  const int k = static_cast<int>(draw.cols());
  if (k > kMaxRelabelAttributes) {
    throw UnsupportedConfigError("best_permutation: attribute count " + std::to_string(k) +
                                 " exceeds the K! search limit of " +
                                 std::to_string(kMaxRelabelAttributes));
  }

  // Squared distance decomposes over columns, so precompute the K x K cost
  // of placing draw column s at reference column c.
  RealMatrix cost(draw.cols(), draw.cols());
  for (std::size_t s = 0; s < draw.cols(); ++s) {
    for (std::size_t c = 0; c < draw.cols(); ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < draw.rows(); ++r) {
        const double diff = static_cast<double>(draw(r, s)) - reference(r, c);
        sum += diff * diff;
      }
      cost(s, c) = sum;
    }
  }

  std::vector<int> perm(draw.cols());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  // next_permutation walks lexicographically, so strict improvement keeps
  // the lexicographically smallest argmin.
  do {
    double total = 0.0;
    for (std::size_t c = 0; c < perm.size(); ++c) {
      total += cost(static_cast<std::size_t>(perm[c]), c);
    }
    if (total < best_cost) {
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

QSampleArray relabel_pass(const QSampleArray& draws, const RealMatrix& reference) {
  check_stack(draws);
  QSampleArray out;
  out.reserve(draws.size());
  for (const auto& d : draws) out.push_back(permute_columns(d, best_permutation(d, reference)));
  return out;
}

RelabelResult relabel_converge(const QSampleArray& draws, int max_rounds) {
  check_stack(draws);
  if (max_rounds < 1) throw InvalidInputError("relabel_converge: max_rounds must be >= 1");

  RelabelResult result;
  result.relabeled = draws;
  result.permutations.assign(draws.size(), {});
  for (auto& p : result.permutations) {
    p.resize(draws.front().cols());
    std::iota(p.begin(), p.end(), 0);
  }

  RealMatrix reference = stack_mean(result.relabeled);
  for (int round = 1; round <= max_rounds; ++round) {
    result.rounds = round;
    bool any_change = false;
    for (std::size_t t = 0; t < result.relabeled.size(); ++t) {
      const std::vector<int> perm = best_permutation(result.relabeled[t], reference);
      if (is_identity(perm)) continue;
      any_change = true;
      result.relabeled[t] = permute_columns(result.relabeled[t], perm);
      // Compose into the cumulative map from the original draw.
      std::vector<int>& cumulative = result.permutations[t];
      std::vector<int> composed(perm.size());
      for (std::size_t c = 0; c < perm.size(); ++c) {
        composed[c] = cumulative[static_cast<std::size_t>(perm[c])];
      }
      cumulative = std::move(composed);
    }
    reference = stack_mean(result.relabeled);
    if (!any_change) {
      result.converged = true;
      break;
    }
  }
  result.mean_q = std::move(reference);
  return result;
}

}  // namespace dinaq
