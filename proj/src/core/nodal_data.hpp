#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dnodal {

enum class NodalSource { numeric, synthetic };

const char* source_name(NodalSource s) noexcept;

/// n -> ascending nodes of phi1(., lambda_n) in (0, pi).
struct NodalData {
    std::map<int, std::vector<double>> nodes;
    NodalSource source = NodalSource::numeric;

    bool empty() const noexcept { return nodes.empty(); }
    /// Throws ConfigError if a list is not strictly increasing inside (0, pi).
    void check() const;
};

/// CSV "n,j,x" with a leading "# source=..." comment; j is the zero-based
/// position in the sorted list.
void write_nodal_csv(const NodalData& data, std::ostream& out);
NodalData read_nodal_csv(std::istream& in);

}  // namespace dnodal
