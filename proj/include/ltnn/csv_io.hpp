#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ltnn/erm.hpp"

namespace ltnn::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<Vec> rows;
  std::vector<std::size_t> lines;  // 1-based source line of each row
};

/// Comma-separated rationals under a header line. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError as "source:line".
Table read(std::istream& in, const std::string& source);
Table read_file(const std::string& path);

/// Header x1..xn,y. Duplicate points are reported with both line numbers.
Dataset to_dataset(const Table& t, const std::string& source);
/// Header x1..xn, optionally followed by a y column that is ignored.
std::vector<Vec> to_points(const Table& t, const std::string& source);

void write_values(std::ostream& out, const std::vector<Vec>& points, const Vec& values);

}  // namespace ltnn::csv
