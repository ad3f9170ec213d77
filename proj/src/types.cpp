#include "dinaq/types.hpp"

#include <cmath>

#include "dinaq/errors.hpp"

namespace dinaq {

namespace {

void require_binary(const BinaryMatrix& m, const char* what) {
  for (std::uint8_t v : m.data()) {
    if (v > 1) throw InvalidInputError(std::string(what) + ": entries must be 0 or 1");
  }
}

}  // namespace

ResponseMatrix::ResponseMatrix(BinaryMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw InvalidInputError("response matrix: needs at least one examinee and one item");
  }
  require_binary(m_, "response matrix");
}

QMatrix::QMatrix(BinaryMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw InvalidInputError("Q-matrix: needs at least one item and one attribute");
  }
  require_binary(m_, "Q-matrix");
  for (std::size_t j = 0; j < m_.rows(); ++j) {
    bool any = false;
    for (std::size_t k = 0; k < m_.cols(); ++k) any = any || m_(j, k) != 0;
    if (!any) throw InvalidInputError("Q-matrix: row " + std::to_string(j) + " is all zeros");
  }
}

void QMatrix::set_row(std::size_t j, std::span<const std::uint8_t> bits) {
  if (bits.size() != m_.cols()) throw InvalidInputError("Q-matrix: row length mismatch");
  bool any = false;
  for (std::uint8_t b : bits) {
    if (b > 1) throw InvalidInputError("Q-matrix: entries must be 0 or 1");
    any = any || b != 0;
  }
  if (!any) throw InvalidInputError("Q-matrix: row must not be all zeros");
  m_.set_row(j, bits);
}

AttributeMatrix::AttributeMatrix(BinaryMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw InvalidInputError("attribute matrix: needs at least one examinee and one attribute");
  }
  require_binary(m_, "attribute matrix");
}

void validate_item_params(const ItemParams& params) {
  if (params.guess.size() != params.slip.size()) {
    throw InvalidInputError("item params: guess and slip lengths differ");
  }
  for (std::size_t j = 0; j < params.guess.size(); ++j) {
    const double g = params.guess[j];
    const double s = params.slip[j];
    if (!(g >= 0.0 && g < 1.0) || !(s >= 0.0 && s < 1.0)) {
      throw InvalidInputError("item params: guess and slip must lie in [0, 1)");
    }
    if (!(1.0 - s > g)) {
      throw InvalidInputError("item params: monotonicity 1 - slip > guess violated at item " +
                              std::to_string(j));
    }
  }
}

void validate_simplex(std::span<const double> probs, double tol) {
  if (probs.empty()) throw InvalidInputError("simplex: empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidInputError("simplex: entries must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvalidInputError("simplex: entries sum to " + std::to_string(sum) + ", expected 1");
  }
}

}  // namespace dinaq
