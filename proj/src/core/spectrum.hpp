#pragma once

#include "core/forward.hpp"
#include "core/nodal_data.hpp"
#include "core/problem.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dnodal {

struct SpectrumOptions {
    /// Eigenvalue tolerance; bisection runs to a bracket of width tol/4.
    double tol = 1e-10;
    /// Grid resolution: intervals are chosen so that |lambda| h <= max_lambda_h.
    double max_lambda_h = default_max_lambda_h;
    int min_intervals = 256;
    /// Scan window around the asymptotic seed.
    double half_width = 0.45;
    int scan_samples = 36;
    /// Absolute tolerance for node refinement.
    double node_tol = 1e-12;
    ForwardOptions forward;
    unsigned threads = 0;
};

struct EigenResult {
    int n = 0;
    double lambda = 0.0;
    double residual = 0.0;  // |Delta(lambda)|
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int intervals = 0;
};

/// Intervals used for index n (depends on the seed, the resolution and the
/// guard).
int spectrum_intervals(const ProblemDefinition& problem, int n, const SpectrumOptions& options);

/// Scans the normalized Delta on [seed - half_width, seed + half_width] and
/// bisects the single sign change. Throws BracketingError on no sign change
/// and AmbiguityError on more than one.
EigenResult find_eigenvalue(const ProblemDefinition& problem, int n, const SpectrumOptions& options = {});

/// Interior zeros of phi1(., lambda), refined to `tol` by bisection on local
/// re-evaluations. Sign changes within h of either endpoint are ignored.
/// Throws ResolutionError if two nodes are closer than 2h.
std::vector<double> find_nodes(const ProblemDefinition& problem, double lambda, int intervals,
                               double tol = 1e-12, const ForwardOptions& forward = {});

struct Spectrum {
    std::map<int, EigenResult> entries;
    std::map<int, std::string> failures;  // n -> "category: message"
};

Spectrum compute_spectrum(const ProblemDefinition& problem, int n_min, int n_max,
                          const SpectrumOptions& options = {});

struct NodalReport {
    NodalData data;
    Spectrum spectrum;
    std::map<int, std::string> failures;
};

/// Eigenvalue plus node list per n, computed concurrently. Per-n failures are
/// collected, not thrown.
NodalReport nodal_data(const ProblemDefinition& problem, int n_min, int n_max,
                       const SpectrumOptions& options = {});

/// CSV "n,lambda,residual".
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out);

}  // namespace dnodal
