#pragma once

#include "core/problem.hpp"
#include "core/problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace dnodal::test {

constexpr double pi = std::numbers::pi;

inline ProblemDefinition from_json(const std::string& text) {
    return ProblemDefinition::create(parse_problem(text));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace dnodal::test
