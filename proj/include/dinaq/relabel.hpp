#pragma once

#include <vector>

#include "dinaq/matrix.hpp"
#include "dinaq/sampler.hpp"

namespace dinaq {

/// Column permutations are enumerated exhaustively; beyond this the K!
/// search is refused.
inline constexpr int kMaxRelabelAttributes = 8;

struct RelabelResult {
  QSampleArray relabeled;
  RealMatrix mean_q;  // entrywise average of the relabeled draws
  /// Cumulative column permutation applied to each draw: output column c of
  /// draw t is input column permutations[t][c].
  std::vector<std::vector<int>> permutations;
  int rounds = 0;
  bool converged = false;
};

/// Column permutation of `draw` closest to `reference` in Euclidean
/// (Frobenius) distance. Ties break to the lexicographically smallest
/// permutation. Returned as p with output column c = input column p[c].
std::vector<int> best_permutation(const BinaryMatrix& draw, const RealMatrix& reference);

/// Applies a column permutation: out(:, c) = m(:, perm[c]).
template <typename T>
Matrix<T> permute_columns(const Matrix<T>& m, const std::vector<int>& perm) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = m(r, static_cast<std::size_t>(perm[c]));
    }
  }
  return out;
}

/// Aligns every draw to the reference independently.
QSampleArray relabel_pass(const QSampleArray& draws, const RealMatrix& reference);

/// Iterated relabeling: start from the entrywise mean as reference, align,
/// recompute the mean, and repeat until a pass leaves every draw unchanged
/// (the permutation assignment is a fixed point) or max_rounds is reached.
RelabelResult relabel_converge(const QSampleArray& draws, int max_rounds = 100);

/// Entrywise mean of a draw stack.
RealMatrix stack_mean(const QSampleArray& draws);

}  // namespace dinaq
