#include "lowdim/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "lowdim/error.hpp"

namespace lowdim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  const std::string buf(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE) return std::nullopt;
  return v;
}

std::optional<std::vector<double>> parse_row(std::string_view line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto v = parse_real(field);
    if (!v) return std::nullopt;
    row.push_back(*v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return row;
}

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto row = parse_row(line);
    if (!row) {
      if (first_content) {
        first_content = false;
        continue;
      }
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + " is not a row of numbers");
    }
    first_content = false;
    rows.push_back(std::move(*row));
  }
  return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

PointSet read_point_set_csv(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw Error(ErrorKind::ParseError, "no points in CSV input");
  try {
    return PointSet::from_rows(rows);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

PointSet read_point_set_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_point_set_csv(in);
}

void write_point_set_csv(std::ostream& out, const PointSet& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = ps[i];
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (c) out << ',';
      out << format_real(p[c]);
    }
    out << '\n';
  }
}

DistanceMatrix read_distance_matrix_csv(std::istream& in) {
  auto rows = read_rows(in);
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::ParseError, "no rows in matrix CSV input");
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorKind::ParseError, "matrix CSV is not square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  try {
    return DistanceMatrix(n, std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

DistanceMatrix read_distance_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_distance_matrix_csv(in);
}

void write_distance_matrix_csv(std::ostream& out, const DistanceMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace lowdim
