#include "core/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace dnodal::fixtures {

namespace {
constexpr double pi = std::numbers::pi;
}

ProblemDefinition worked_example(double b1, double b2, double d1, double d2) {
    ProblemData d;
    d.bc = {pi / 4, pi / 4, b1, b2, d1, d2};
    d.coeffs.V = [](double x) { return x / 2 - pi / 4; };
    d.coeffs.m = 1.0;
    d.coeffs.chi[1] = KernelEntry::separable({{[](double) { return 1.0; }, [](double t) { return pi / 2 - t; }}});
    return ProblemDefinition::create(std::move(d));
}

ProblemDefinition free_problem(double theta, double beta) {
    ProblemData d;
    d.bc.theta = theta;
    d.bc.beta = beta;
    d.coeffs.V = [](double) { return 0.0; };
    return ProblemDefinition::create(std::move(d));
}

ProblemDefinition constant_mass(double m, double theta, double beta) {
    ProblemData d;
    d.bc.theta = theta;
    d.bc.beta = beta;
    d.coeffs.V = [](double) { return 0.0; };
    d.coeffs.m = m;
    return ProblemDefinition::create(std::move(d));
}

ProblemDefinition roundtrip_problem() {
    ProblemData d;
    d.bc.theta = 0.3;
    d.bc.beta = 0.1;
    d.coeffs.V = [](double x) { return std::cos(x); };
    d.coeffs.m = 0.5;
    d.coeffs.chi[1] = KernelEntry::separable(
        {{[](double) { return 1.0; }, [](double t) { return std::sin(t) - 2 / pi; }}});
    return ProblemDefinition::create(std::move(d));
}

}  // namespace dnodal::fixtures
