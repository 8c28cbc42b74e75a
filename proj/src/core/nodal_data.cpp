#include "core/nodal_data.hpp"

#include "core/csv.hpp"
#include "core/error.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

namespace dnodal {

const char* source_name(NodalSource s) noexcept {
    return s == NodalSource::synthetic ? "synthetic" : "numeric";
}

void NodalData::check() const {
    for (const auto& [n, xs] : nodes) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!(xs[i] > 0.0 && xs[i] < std::numbers::pi))
                throw ConfigError("nodal data: n = " + std::to_string(n) + " has a node outside (0, pi)");
            if (i > 0 && !(xs[i] > xs[i - 1]))
                throw ConfigError("nodal data: n = " + std::to_string(n) + " is not strictly increasing");
        }
    }
}

void write_nodal_csv(const NodalData& data, std::ostream& out) {
    out << "# source=" << source_name(data.source) << '\n' << "n,j,x\n";
    for (const auto& [n, xs] : data.nodes)
        for (std::size_t j = 0; j < xs.size(); ++j) out << n << ',' << j << ',' << csv::number(xs[j]) << '\n';
}

NodalData read_nodal_csv(std::istream& in) {
    std::vector<std::string> comments;
    const auto rows = csv::read(in, "n,j,x", &comments);
    NodalData data;
    for (const auto& c : comments)
        if (c == "# source=synthetic") data.source = NodalSource::synthetic;
    for (const auto& row : rows) {
        if (row.fields.size() != 3) throw ParseError("expected 3 fields", row.line, 1);
        const auto n = csv::parse_integer(row.fields[0], row.line, row.columns[0]);
        const auto j = csv::parse_integer(row.fields[1], row.line, row.columns[1]);
        const double x = csv::parse_number(row.fields[2], row.line, row.columns[2]);
        auto& list = data.nodes[static_cast<int>(n)];
        if (j != static_cast<long long>(list.size()))
            throw ParseError("node index out of sequence for n = " + std::to_string(n), row.line, row.columns[1]);
        if (!(x > 0.0 && x < std::numbers::pi) || (!list.empty() && !(x > list.back())))
            throw ParseError("nodes must be strictly increasing in (0, pi)", row.line, row.columns[2]);
        list.push_back(x);
    }
    return data;
}

}  // namespace dnodal
