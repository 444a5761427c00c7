#include "ltnn/csv_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ltnn/errors.hpp"

namespace ltnn::csv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

std::size_t coordinate_columns(const Table& t, const std::string& source, bool with_label) {
  std::size_t n = 0;
  while (n < t.header.size() && t.header[n] == "x" + std::to_string(n + 1)) ++n;
  const std::size_t expected = with_label ? n + 1 : n;
  const bool label_ok = !with_label || (n < t.header.size() && t.header[n] == "y");
  const bool optional_y = !with_label && t.header.size() == n + 1 && t.header[n] == "y";
  if (n == 0 || !label_ok || (t.header.size() != expected && !optional_y)) {
    throw ParseError(where(source, 1), with_label ? "header must be x1,...,xn,y" : "header must be x1,...,xn");
  }
  return n;
}

}  // namespace

Table read(std::istream& in, const std::string& source) {
  Table t;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto fields = split(s);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError(where(source, number), "expected " + std::to_string(t.header.size()) + " fields, found " +
                                                  std::to_string(fields.size()));
    }
    Vec row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        row.push_back(parse_rational(fields[i]));
      } catch (const ParseError& e) {
        throw ParseError(where(source, number), "column " + t.header[i] + ": " + e.what());
      }
    }
    t.rows.push_back(std::move(row));
    t.lines.push_back(number);
  }
  if (!have_header) throw ParseError(where(source, number), "missing header line");
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read(in, path);
}

Dataset to_dataset(const Table& t, const std::string& source) {
  const std::size_t n = coordinate_columns(t, source, true);
  Dataset d;
  std::map<Vec, std::size_t> seen;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Vec x(t.rows[r].begin(), t.rows[r].begin() + static_cast<std::ptrdiff_t>(n));
    auto [it, inserted] = seen.emplace(x, t.lines[r]);
    if (!inserted) {
      throw InputError("duplicate data point " + to_string(x) + " on lines " + std::to_string(it->second) + " and " +
                       std::to_string(t.lines[r]) + " of " + source);
    }
    d.points.push_back(std::move(x));
    d.labels.push_back(t.rows[r][n]);
  }
  if (d.points.empty()) throw InputError(source + " contains no data rows");
  return d;
}

std::vector<Vec> to_points(const Table& t, const std::string& source) {
  const std::size_t n = coordinate_columns(t, source, false);
  std::vector<Vec> out;
  for (const auto& row : t.rows) out.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

void write_values(std::ostream& out, const std::vector<Vec>& points, const Vec& values) {
  const std::size_t n = points.empty() ? 0 : points.front().size();
  for (std::size_t i = 0; i < n; ++i) out << 'x' << (i + 1) << ',';
  out << "y\n";
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (const auto& q : points[r]) out << to_string(q) << ',';
    out << to_string(values[r]) << '\n';
  }
}

}  // namespace ltnn::csv
