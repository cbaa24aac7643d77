#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sine::io {

struct DenseMatrixData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> row_major;

  friend bool operator==(const DenseMatrixData&, const DenseMatrixData&) = default;
};

// Readers throw InputError with "<file>:<line>: ..." context on malformed,
// mis-sized or non-finite input.

/// Matrix Market `matrix coordinate|array real|integer general|symmetric`.
DenseMatrixData read_matrix_market(const std::filesystem::path& path);
/// Writes `array real general`, shortest round-trip decimal form.
void write_matrix_market(const std::filesystem::path& path, const DenseMatrixData& m);

/// Headerless CSV, one matrix row per line.
DenseMatrixData read_csv_matrix(const std::filesystem::path& path);
/// Headerless one-column CSV.
std::vector<double> read_csv_vector(const std::filesystem::path& path);
void write_csv_vector(const std::filesystem::path& path, std::span<const double> v);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace sine::io
