#include "core/asymptotics.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dnodal {

namespace {
constexpr double pi = std::numbers::pi;
}

AsymptoticConstants asymptotic_constants(const ProblemDefinition& problem) {
    const auto& bc = problem.bc();
    const double m = problem.coeffs().m;
    const auto& I = problem.integrals();
    const double K_pi = I.K.back();
    const double L_pi = I.L.back();
    const double th = bc.theta;
    const double be = bc.beta;
    AsymptoticConstants c;
    c.B_hat = bc.b1 * std::cos(th) + bc.b2 * std::sin(th) + m * std::cos(be - th) * std::cos(th + be) -
              K_pi / 2 + bc.d1 * std::cos(be) + bc.d2 * std::sin(be);
    c.C_hat = bc.b1 * std::sin(th) - bc.b2 * std::cos(th) - m * std::sin(be - th) * std::cos(th + be) +
              m * m * pi / 2 - L_pi / 2 - bc.d1 * std::sin(be) + bc.d2 * std::cos(be);
    return c;
}

std::array<double, 2> phi_asym(const ProblemDefinition& problem, double x, double lambda) {
    const auto& bc = problem.bc();
    const double m = problem.coeffs().m;
    const auto& I = problem.integrals();
    const double nu = I.nu_at(x);
    const double K = I.K_at(x);
    const double L = I.L_at(x);
    const double b1 = bc.b1;
    const double b2 = bc.b2;
    const double psi = lambda * x - nu;
    const double s = std::sin(psi), c = std::cos(psi);
    const double S = std::sin(bc.theta + psi), C = std::cos(bc.theta + psi);
    const double mx = m * m * x / 2;
    const double il = 1.0 / lambda;

    const double phi1 = lambda * S + b1 * s + b2 * c + m * std::cos(bc.theta) * s + b1 * m * il * s - mx * C -
                        b1 * mx * il * c + b2 * mx * il * s - K / 2 * S - b1 * K / 2 * il * s -
                        b2 * K / 2 * il * c + L / 2 * C + b1 * L / 2 * il * c - b2 * L / 2 * il * s;
    const double phi2 = -lambda * C - b1 * c + b2 * s - m * std::sin(bc.theta) * s - b2 * m * il * s - mx * S -
                        b1 * mx * il * s - b2 * mx * il * c + K / 2 * C + b1 * K / 2 * il * c -
                        b2 * K / 2 * il * s + L / 2 * S + b1 * L / 2 * il * s + b2 * L / 2 * il * c;
    return {phi1, phi2};
}

double char_fn_asym(const ProblemDefinition& problem, double lambda) {
    const auto& bc = problem.bc();
    const double m = problem.coeffs().m;
    const auto& I = problem.integrals();
    const double A = lambda * pi + bc.theta - bc.beta;
    const double il = 1.0 / lambda;
    const double bracket = std::sin(A) + bc.b1 * il * std::sin(lambda * pi - bc.beta) +
                           bc.b2 * il * std::cos(lambda * pi - bc.beta) +
                           m * il * std::sin(lambda * pi) * std::cos(bc.theta + bc.beta) -
                           m * m * pi / 2 * il * std::cos(A) - I.K.back() / 2 * il * std::sin(A) +
                           I.L.back() / 2 * il * std::cos(A) + bc.d1 * il * std::sin(lambda * pi + bc.theta) -
                           bc.d2 * il * std::cos(lambda * pi + bc.theta);
    return lambda * lambda * bracket;
}

double lambda_asym(const ProblemDefinition& problem, int n) {
    if (n < 1) throw ConfigError("lambda_asym: n must be >= 1");
    const auto& bc = problem.bc();
    return n + (bc.beta - bc.theta) / pi + asymptotic_constants(problem).C_hat / (n * pi);
}

namespace {

double node_formula(const ProblemDefinition& problem, int n, int j) {
    const auto& bc = problem.bc();
    const double m = problem.coeffs().m;
    const auto& I = problem.integrals();
    const double nn = n;
    const double xs = j * pi / nn;
    const double a = (bc.beta - bc.theta) / pi;
    const double f = I.nu_at(xs) - bc.theta;
    const double bracket = 2 * bc.b1 * std::sin(bc.theta) - 2 * bc.b2 * std::cos(bc.theta) +
                           2 * m * std::cos(bc.theta) * std::sin(bc.theta) + m * m * xs - I.L_at(xs);
    return xs - xs * a / nn + f / nn - f * a / (nn * nn) + bracket / (2 * nn * nn);
}

}  // namespace

double node_asym(const ProblemDefinition& problem, int n, int j) {
    if (n < 1) throw ConfigError("node_asym: n must be >= 1");
    if (j < 0 || j > n)
        throw ConfigError("node_asym: j = " + std::to_string(j) + " outside [0, " + std::to_string(n) + "]");
    return node_formula(problem, n, j);
}

NodalData synthesize_nodal_data(const ProblemDefinition& problem, int n_min, int n_max) {
    NodalData data;
    data.source = NodalSource::synthetic;
    if (n_min < 1 && n_min <= n_max) throw ConfigError("synthesize_nodal_data: n must be >= 1");
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<double> xs;
        for (int j = 0; j <= n; ++j) {
            const double x = node_formula(problem, n, j);
            if (x > 0.0 && x < pi) xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        data.nodes[n] = std::move(xs);
    }
    return data;
}

}  // namespace dnodal
