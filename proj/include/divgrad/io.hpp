#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "divgrad/errors.hpp"

namespace divgrad {

/// Decimal text with 17 significant digits; round-trips any double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// One value per line.
inline std::vector<double> read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vector file: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(line, &pos);
    out.push_back(v);
  }
  if (out.empty()) throw Error("vector file is empty: " + path);
  return out;
}

inline void write_vector(const std::string& path,
                         const std::vector<double>& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write vector file: " + path);
  for (double x : v) out << format_double(x) << "\n";
}

struct MatrixData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
};

/// Comma-separated rows.
inline MatrixData read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file: " + path);
  MatrixData m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(row, cell, ',')) {
      m.values.push_back(std::stod(cell));
      ++cols;
    }
    if (m.rows == 0) {
      m.cols = cols;
    } else if (cols != m.cols) {
      throw ShapeError("matrix file has ragged rows: " + path);
    }
    ++m.rows;
  }
  if (m.rows == 0) throw Error("matrix file is empty: " + path);
  return m;
}

inline void write_matrix_csv(const std::string& path, std::size_t rows,
                             std::size_t cols,
                             const std::vector<double>& values) {
  if (values.size() != rows * cols) {
    throw ShapeError("write_matrix_csv: size mismatch");
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file: " + path);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out << format_double(values[i * cols + j]);
      out << (j + 1 < cols ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace divgrad
