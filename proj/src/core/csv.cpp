#include "core/csv.hpp"

#include "core/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>

namespace dnodal::csv {

std::string number(double v) {
    if (v == 0.0) return "0";  // also folds -0
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_number(std::string_view field, int line, int column) {
    double v = 0.0;
    const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size() || field.empty() || !std::isfinite(v))
        throw ParseError("invalid number '" + std::string(field) + "'", line, column);
    return v;
}

long long parse_integer(std::string_view field, int line, int column) {
    long long v = 0;
    const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size() || field.empty())
        throw ParseError("invalid integer '" + std::string(field) + "'", line, column);
    return v;
}

std::vector<Row> read(std::istream& in, std::string_view header, std::vector<std::string>* comments) {
    std::vector<Row> rows;
    std::string text;
    int line = 0;
    bool seen_header = false;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (comments) comments->push_back(text);
            continue;
        }
        if (!seen_header) {
            if (text != header)
                throw ParseError("expected header '" + std::string(header) + "'", line, 1);
            seen_header = true;
            continue;
        }
        Row row;
        row.line = line;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            row.fields.push_back(text.substr(start, comma - start));
            row.columns.push_back(static_cast<int>(start) + 1);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (!seen_header) throw ParseError("missing header '" + std::string(header) + "'", line + 1, 1);
    return rows;
}

}  // namespace dnodal::csv
