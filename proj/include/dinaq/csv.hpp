#pragma once

#include <filesystem>

#include "dinaq/matrix.hpp"
#include "dinaq/sampler.hpp"

namespace dinaq {

/// Headerless CSV of 0/1 integers.
void write_binary_csv(const std::filesystem::path& path, const BinaryMatrix& m);
BinaryMatrix read_binary_csv(const std::filesystem::path& path);

/// Headerless CSV of reals, fixed decimal places.
void write_real_csv(const std::filesystem::path& path, const RealMatrix& m, int precision = 6);
RealMatrix read_real_csv(const std::filesystem::path& path);

/// Draw stacks: one draw per line, entries row-major.
void write_draw_stack_csv(const std::filesystem::path& path, const QSampleArray& draws);
QSampleArray read_draw_stack_csv(const std::filesystem::path& path, std::size_t rows,
                                 std::size_t cols);

}  // namespace dinaq
