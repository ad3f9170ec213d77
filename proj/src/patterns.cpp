#include "dinaq/patterns.hpp"

#include <string>

#include "dinaq/errors.hpp"

namespace dinaq {

namespace {

void check_attribute_count(int k) {
  if (k < 1) throw InvalidInputError("pattern space: attribute count must be >= 1");
  if (k > kMaxAttributes) {
    throw UnsupportedConfigError("pattern space: attribute count " + std::to_string(k) +
                                 " exceeds supported maximum of " +
                                 std::to_string(kMaxAttributes));
  }
}

}  // namespace

PatternIndex pattern_to_index(std::span<const std::uint8_t> bits) {
  check_attribute_count(static_cast<int>(bits.size()));
  PatternIndex idx = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw InvalidInputError("pattern: entries must be 0 or 1");
    idx = (idx << 1) | b;
  }
  return idx;
}

std::vector<std::uint8_t> index_to_pattern(PatternIndex idx, int k) {
  check_attribute_count(k);
  if (idx >= (PatternIndex{1} << k)) {
    throw InvalidInputError("pattern index " + std::to_string(idx) + " out of range for k=" +
                            std::to_string(k));
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(k));
  for (int pos = 0; pos < k; ++pos) {
    bits[static_cast<std::size_t>(pos)] =
        static_cast<std::uint8_t>((idx >> (k - 1 - pos)) & 1u);
  }
  return bits;
}

PatternTable enumerate_attribute_patterns(int k) {
  check_attribute_count(k);
  const PatternIndex m = PatternIndex{1} << k;
  PatternTable table;
  table.k = k;
  table.rows.reserve(m);
  for (PatternIndex idx = 0; idx < m; ++idx) table.rows.push_back(index_to_pattern(idx, k));
  return table;
}

PatternTable enumerate_q_row_patterns(int k) {
  check_attribute_count(k);
  const PatternIndex m = PatternIndex{1} << k;
  PatternTable table;
  table.k = k;
  table.rows.reserve(m - 1);
  for (PatternIndex idx = 1; idx < m; ++idx) table.rows.push_back(index_to_pattern(idx, k));
  return table;
}

}  // namespace dinaq
