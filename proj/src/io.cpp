#include "sine/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sine/errors.hpp"

namespace sine::io {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << path.string();
  if (line > 0) msg << ":" << line;
  msg << ": " << what;
  throw InputError(msg.str());
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, 0, "cannot open file");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(path, 0, "cannot open file for writing");
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, const std::filesystem::path& path, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) fail(path, line, "cannot parse number '" + std::string(token) + "'");
  if (!std::isfinite(value)) fail(path, line, "non-finite value '" + std::string(token) + "'");
  return value;
}

std::size_t parse_index(std::string_view token, const std::filesystem::path& path, std::size_t line) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) fail(path, line, "cannot parse index '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

DenseMatrixData read_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++lineno;
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix") fail(path, lineno, "missing %%MatrixMarket matrix banner");
  if (format != "coordinate" && format != "array") fail(path, lineno, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer" && field != "double") fail(path, lineno, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric") fail(path, lineno, "unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  // size line
  std::vector<std::string_view> tokens;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    tokens = split_whitespace(line);
    break;
  }
  const std::size_t expected_tokens = format == "coordinate" ? 3 : 2;
  if (tokens.size() != expected_tokens) fail(path, lineno, "malformed size line");
  DenseMatrixData m;
  m.rows = parse_index(tokens[0], path, lineno);
  m.cols = parse_index(tokens[1], path, lineno);
  if (m.rows == 0 || m.cols == 0) fail(path, lineno, "matrix dimensions must be positive");
  if (symmetric && m.rows != m.cols) fail(path, lineno, "symmetric matrix must be square");
  m.row_major.assign(m.rows * m.cols, 0.0);

  if (format == "coordinate") {
    const std::size_t nnz = parse_index(tokens[2], path, lineno);
    std::size_t seen = 0;
    while (seen < nnz && std::getline(in, line)) {
      ++lineno;
      const auto t = trim(line);
      if (t.empty() || t.front() == '%') continue;
      const auto entry = split_whitespace(line);
      if (entry.size() != 3) fail(path, lineno, "coordinate entry needs 'row col value'");
      const std::size_t i = parse_index(entry[0], path, lineno);
      const std::size_t j = parse_index(entry[1], path, lineno);
      if (i < 1 || i > m.rows || j < 1 || j > m.cols) {
        fail(path, lineno, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                               std::to_string(m.rows) + "x" + std::to_string(m.cols));
      }
      const double v = parse_double(entry[2], path, lineno);
      m.row_major[(i - 1) * m.cols + (j - 1)] = v;
      if (symmetric) m.row_major[(j - 1) * m.cols + (i - 1)] = v;
      ++seen;
    }
    if (seen != nnz) fail(path, lineno, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  } else {
    // column-major; symmetric arrays store the lower triangle only
    std::vector<double> values;
    while (std::getline(in, line)) {
      ++lineno;
      const auto t = trim(line);
      if (t.empty() || t.front() == '%') continue;
      for (auto tok : split_whitespace(line)) values.push_back(parse_double(tok, path, lineno));
    }
    const std::size_t want = symmetric ? m.rows * (m.rows + 1) / 2 : m.rows * m.cols;
    if (values.size() != want) {
      fail(path, lineno, "expected " + std::to_string(want) + " array values, found " + std::to_string(values.size()));
    }
    std::size_t k = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      for (std::size_t i = symmetric ? j : 0; i < m.rows; ++i) {
        m.row_major[i * m.cols + j] = values[k];
        if (symmetric) m.row_major[j * m.cols + i] = values[k];
        ++k;
      }
    }
  }
  return m;
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrixData& m) {
  auto out = open_output(path);
  out << "%%MatrixMarket matrix array real general\n" << m.rows << " " << m.cols << "\n";
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) out << format_double(m.row_major[i * m.cols + j]) << "\n";
  }
  if (!out) fail(path, 0, "write failed");
}

DenseMatrixData read_csv_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  DenseMatrixData m;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (m.rows == 0) {
      m.cols = fields.size();
    } else if (fields.size() != m.cols) {
      fail(path, lineno, "row has " + std::to_string(fields.size()) + " columns, expected " + std::to_string(m.cols));
    }
    for (auto f : fields) m.row_major.push_back(parse_double(f, path, lineno));
    ++m.rows;
  }
  if (m.rows == 0) fail(path, lineno, "no data rows");
  return m;
}

std::vector<double> read_csv_vector(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> v;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 1) fail(path, lineno, "expected a single column, found " + std::to_string(fields.size()));
    v.push_back(parse_double(fields[0], path, lineno));
  }
  if (v.empty()) fail(path, lineno, "no data rows");
  return v;
}

void write_csv_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_output(path);
  for (double x : v) out << format_double(x) << "\n";
  if (!out) fail(path, 0, "write failed");
}

}  // namespace sine::io
