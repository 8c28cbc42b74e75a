#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dnodal::csv {

/// Shortest representation that parses back to the same double.
std::string number(double v);

/// Strict double parse of a whole field; throws ParseError with the given
/// line and column on failure.
double parse_number(std::string_view field, int line, int column);
long long parse_integer(std::string_view field, int line, int column);

struct Row {
    int line = 0;
    std::vector<std::string> fields;
    std::vector<int> columns;  // 1-based column of each field
};

/// Splits a simple comma-separated document (no quoting). Blank lines are
/// skipped; lines starting with '#' are returned through `comments`.
/// The first non-comment line must equal `header`.
std::vector<Row> read(std::istream& in, std::string_view header, std::vector<std::string>* comments = nullptr);

}  // namespace dnodal::csv
