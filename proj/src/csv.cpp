#include "dinaq/csv.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dinaq/errors.hpp"

namespace dinaq {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(field, &consumed);
    while (consumed < field.size() && std::isspace(static_cast<unsigned char>(field[consumed]))) {
      ++consumed;
    }
    if (consumed != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw IoError("'" + path.string() + "' line " + std::to_string(line_no) +
                  ": cannot parse '" + field + "' as a number");
  }
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<double> row;
    for (const std::string& field : split_line(line)) {
      row.push_back(parse_double(field, path, line_no));
    }
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw IoError("'" + path.string() + "' line " + std::to_string(line_no) +
                    ": expected " + std::to_string(width) + " fields, found " +
                    std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("'" + path.string() + "' contains no data");
  return rows;
}

}  // namespace

void write_binary_csv(const std::filesystem::path& path, const BinaryMatrix& m) {
  std::ofstream out = open_out(path);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out << static_cast<int>(m(r, c)) << (c + 1 == m.cols() ? "" : ",");
    }
    out << '\n';
  }
}

BinaryMatrix read_binary_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  BinaryMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const double v = rows[r][c];
      if (v != 0.0 && v != 1.0) {
        throw IoError("'" + path.string() + "': entry at row " + std::to_string(r + 1) +
                      " is not 0 or 1");
      }
      m(r, c) = static_cast<std::uint8_t>(v);
    }
  }
  return m;
}

void write_real_csv(const std::filesystem::path& path, const RealMatrix& m, int precision) {
  std::ofstream out = open_out(path);
  out.setf(std::ios::fixed);
  out.precision(precision);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out << m(r, c) << (c + 1 == m.cols() ? "" : ",");
    }
    out << '\n';
  }
}

RealMatrix read_real_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  RealMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void write_draw_stack_csv(const std::filesystem::path& path, const QSampleArray& draws) {
  std::ofstream out = open_out(path);
  for (const auto& draw : draws) {
    for (std::size_t idx = 0; idx < draw.data().size(); ++idx) {
      out << static_cast<int>(draw.data()[idx]) << (idx + 1 == draw.data().size() ? "" : ",");
    }
    out << '\n';
  }
}

QSampleArray read_draw_stack_csv(const std::filesystem::path& path, std::size_t rows,
                                 std::size_t cols) {
  const auto lines = read_rows(path);
  QSampleArray draws;
  draws.reserve(lines.size());
  for (std::size_t t = 0; t < lines.size(); ++t) {
    if (lines[t].size() != rows * cols) {
      throw IoError("'" + path.string() + "' line " + std::to_string(t + 1) + ": expected " +
                    std::to_string(rows * cols) + " entries per draw");
    }
    BinaryMatrix m(rows, cols);
    for (std::size_t idx = 0; idx < rows * cols; ++idx) {
      const double v = lines[t][idx];
      if (v != 0.0 && v != 1.0) {
        throw IoError("'" + path.string() + "' line " + std::to_string(t + 1) +
                      ": draw entries must be 0 or 1");
      }
      m.data()[idx] = static_cast<std::uint8_t>(v);
    }
    draws.push_back(std::move(m));
  }
  return draws;
}

}  // namespace dinaq
