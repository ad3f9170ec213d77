#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dinaq {

/// Decimal code of a binary attribute or Q-row pattern.
///
/// Convention used everywhere in this project: the first attribute column is
/// the most significant bit, so pattern (b_1, ..., b_K) has code
/// sum_k b_k * 2^(K-k). Attribute counts above kMaxAttributes are rejected
/// because the pattern spaces are enumerated densely.
using PatternIndex = std::uint32_t;

inline constexpr int kMaxAttributes = 16;

/// Ordered enumeration of a binary pattern space, rows sorted by decimal code.
struct PatternTable {
  int k = 0;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t size() const { return rows.size(); }
  const std::vector<std::uint8_t>& operator[](std::size_t i) const { return rows[i]; }
};

PatternIndex pattern_to_index(std::span<const std::uint8_t> bits);

std::vector<std::uint8_t> index_to_pattern(PatternIndex idx, int k);

/// All 2^k attribute patterns, codes 0 .. 2^k - 1.
PatternTable enumerate_attribute_patterns(int k);

/// All 2^k - 1 admissible Q-row patterns; the all-zero row is excluded
/// because an item has to measure at least one attribute.
PatternTable enumerate_q_row_patterns(int k);

}  // namespace dinaq
