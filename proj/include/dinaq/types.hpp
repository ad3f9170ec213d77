#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dinaq/matrix.hpp"

namespace dinaq {

/// Observed binary responses, one row per examinee, one column per item.
class ResponseMatrix {
 public:
  explicit ResponseMatrix(BinaryMatrix m);

  std::size_t examinees() const { return m_.rows(); }
  std::size_t items() const { return m_.cols(); }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::span<const std::uint8_t> row(std::size_t i) const { return m_.row(i); }
  std::vector<std::uint8_t> item_column(std::size_t j) const { return m_.col(j); }
  const BinaryMatrix& matrix() const { return m_; }

  friend bool operator==(const ResponseMatrix&, const ResponseMatrix&) = default;

 private:
  BinaryMatrix m_;
};

/// Item-to-attribute map. Rows are items; no row may be all zeros.
class QMatrix {
 public:
  explicit QMatrix(BinaryMatrix m);

  std::size_t items() const { return m_.rows(); }
  std::size_t attributes() const { return m_.cols(); }
  std::uint8_t operator()(std::size_t j, std::size_t k) const { return m_(j, k); }
  std::span<const std::uint8_t> row(std::size_t j) const { return m_.row(j); }
  void set_row(std::size_t j, std::span<const std::uint8_t> bits);
  const BinaryMatrix& matrix() const { return m_; }

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  BinaryMatrix m_;
};

/// Latent mastery states, one row per examinee, one column per attribute.
class AttributeMatrix {
 public:
  explicit AttributeMatrix(BinaryMatrix m);

  std::size_t examinees() const { return m_.rows(); }
  std::size_t attributes() const { return m_.cols(); }
  std::uint8_t operator()(std::size_t i, std::size_t k) const { return m_(i, k); }
  std::span<const std::uint8_t> row(std::size_t i) const { return m_.row(i); }
  const BinaryMatrix& matrix() const { return m_; }

  friend bool operator==(const AttributeMatrix&, const AttributeMatrix&) = default;

 private:
  BinaryMatrix m_;
};

/// Per-item guess and slip probabilities under the monotonicity constraint
/// 1 - slip[j] > guess[j]. Zero is admitted so the simulator can run in its
/// noiseless mode; estimation always produces interior values.
struct ItemParams {
  std::vector<double> guess;
  std::vector<double> slip;
};

void validate_item_params(const ItemParams& params);

/// Probability vector summing to one.
using SimplexVector = std::vector<double>;

void validate_simplex(std::span<const double> probs, double tol = 1e-9);

}  // namespace dinaq
