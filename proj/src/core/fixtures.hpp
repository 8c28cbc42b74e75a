#pragma once

#include "core/problem.hpp"

namespace dnodal::fixtures {

/// theta = beta = pi/4, V = x/2 - pi/4, m = 1, chi_12(x, t) = pi/2 - t, so
/// L'(x) = pi/2 - x and L(pi) = 0.
ProblemDefinition worked_example(double b1 = 0.3, double b2 = -0.2, double d1 = 0.0, double d2 = 0.0);

/// V = 0, m = 0, chi = 0.
ProblemDefinition free_problem(double theta = 0.0, double beta = 0.0);

/// V = 0, chi = 0, b = d = 0, constant mass m.
ProblemDefinition constant_mass(double m, double theta = 0.0, double beta = 0.0);

/// V = cos x, m = 0.5, theta = 0.3, beta = 0.1, chi_12(x, t) = sin t - 2/pi,
/// so L'(x) = sin x - 2/pi and L(pi) = 0.
ProblemDefinition roundtrip_problem();

}  // namespace dnodal::fixtures
