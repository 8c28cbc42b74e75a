#pragma once

#include "core/problem.hpp"

#include <string>
#include <string_view>

namespace dnodal {

/// Reads a problem definition document (JSON):
///
///   {
///     "bc": {"theta": "pi/4", "beta": 0.7853981633974483, "b1": 0.3, ...},
///     "coeffs": {
///       "V": "x/2 - pi/4",
///       "m": 1,
///       "chi": {"12": "pi/2 - t",
///               "21": {"separable": [{"x": "1", "t": "sin(t)"}]}}
///     },
///     "quadrature_points": 4097
///   }
///
/// Numbers may be given as literals or constant expressions. V is an
/// expression in x; kernel entries are expressions in x and t, or a list of
/// separable factor pairs. Missing bc fields, m and chi entries default to 0.
/// Errors are ParseError with line and column in the document.
ProblemData parse_problem(std::string_view text);

ProblemData load_problem_file(const std::string& path);

}  // namespace dnodal
