#pragma once

#include "core/nodal_data.hpp"
#include "core/problem.hpp"

#include <array>

namespace dnodal {

/// n-independent parts of the tan-equation coefficients: B = B_hat / lambda_n,
/// C = C_hat / lambda_n.
struct AsymptoticConstants {
    double B_hat = 0.0;
    double C_hat = 0.0;
};

AsymptoticConstants asymptotic_constants(const ProblemDefinition& problem);

/// Large-lambda expansion of (phi1, phi2) with all terms through O(1/lambda)
/// and the remainder dropped. Phase is lambda x - nu(x).
std::array<double, 2> phi_asym(const ProblemDefinition& problem, double x, double lambda);

/// Large-lambda expansion of Delta(lambda), including the lambda^2 factor.
double char_fn_asym(const ProblemDefinition& problem, double lambda);

/// n + (beta - theta)/pi + C_hat/(n pi).
double lambda_asym(const ProblemDefinition& problem, int n);

/// Predicted node x_n^j, with nu, m^2 x and L evaluated at x* = j pi / n.
/// j is the phase index: the node closest to j pi / n. Valid for 0 <= j <= n.
double node_asym(const ProblemDefinition& problem, int n, int j);

/// node_asym over j = 0..n for every n in [n_min, n_max], keeping values
/// strictly inside (0, pi). Tagged synthetic.
NodalData synthesize_nodal_data(const ProblemDefinition& problem, int n_min, int n_max);

}  // namespace dnodal
