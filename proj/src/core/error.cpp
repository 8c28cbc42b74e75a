#include "core/error.hpp"

namespace dnodal {

const char* category_name(ErrorCategory c) noexcept {
    switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::invalid_problem: return "invalid-problem";
    case ErrorCategory::numeric: return "numeric";
    case ErrorCategory::io: return "io";
    }
    return "unknown";
}

std::string ParseError::format(const std::string& what, int line, int column) {
    if (line <= 0 && column <= 0) return what;
    std::string out = what + " (";
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(column) + ")";
    return out;
}

}  // namespace dnodal
