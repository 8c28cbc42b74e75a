#pragma once

#include "core/nodal_data.hpp"

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace dnodal {

/// Samples on a uniform grid over [0, pi]; evaluation interpolates with a
/// four-point stencil (and extrapolates from the end stencil outside).
struct SampledFunction {
    std::vector<double> x;
    std::vector<double> y;

    double operator()(double t) const;
    std::size_t size() const noexcept { return x.size(); }
};

SampledFunction uniform_samples(int grid_size);

/// Least-squares extrapolation of a sequence sampled at several n.
struct LimitFit {
    double x = 0.0;
    std::vector<std::pair<int, double>> samples;  // (n, value), ascending n
    std::vector<double> model;                    // a0, a1[, a2] for a0 + a1/n + a2/n^2
    double a0 = 0.0;
    double dispersion = 0.0;  // residual RMS
    double tail = 0.0;        // sample at the largest n
    double tail_gap = 0.0;    // |tail - a0|
};

/// How the per-n value at x is formed from a node list.
enum class NodeSelection {
    interpolate,  // cubic Lagrange through per-node values at the bracketing nodes
    nearest,      // value at the node nearest x
};

struct InverseOptions {
    int window = 7;               // differentiation window (odd, >= 3)
    double stage1_gate = 0.05;    // max f-fit dispersion accepted before the g stage
    std::optional<double> known_m;
    NodeSelection selection = NodeSelection::interpolate;
    int min_samples = 8;          // distinct n required per fit
    double radicand_floor = 1e-6; // |radicand| below this gives m = 0
    unsigned threads = 0;
};

/// Index origin s (j = position + s) for every list, by majority vote of the
/// per-list branch test n x_p - (p + s) pi in [-pi/2, pi/2) at the node p
/// nearest x. The window matches f(0) = -theta, so x should be near 0.
/// Ties prefer the smaller |s|. Throws CalibrationError when no list gives a
/// vote in {-2, ..., 2} or no offset wins a majority.
int calibrate_offset(const NodalData& data, double x);

/// Fit of f_n(x) = n (x_n^j - j pi / n) by a0 + a1/n + a2/n^2.
LimitFit f_estimate(const NodalData& data, double x, int offset, const InverseOptions& options = {});

/// Fit of g_n(x) = n^2 (x_n^j - x*) + j (beta - theta) - n (nu(x*) - theta),
/// x* = j pi / n and nu = f_hat + x (beta - theta)/pi + theta, by a0 + a1/n.
LimitFit g_estimate(const NodalData& data, double x, int offset, double theta_hat, double beta_hat,
                    const SampledFunction& f_hat, const InverseOptions& options = {});

/// Sliding-window least-squares quadratic; derivative of the fit at each
/// sample (one-sided windows at the ends).
SampledFunction differentiate(const SampledFunction& samples, int window);

struct StageDiagnostics {
    int valid_points = 0;         // grid points with a direct fit
    double max_dispersion = 0.0;
    double max_tail_gap = 0.0;
    int min_samples_used = 0;
};

struct ReconstructionResult {
    double theta_hat = 0.0;
    double beta_hat = 0.0;
    double m_hat = 0.0;
    double radicand = 0.0;       // 2 (g(pi) - g(0)) / pi
    bool m_known = false;
    bool m_degenerate = false;   // |radicand| <= floor, m set to 0
    int offset = 0;
    SampledFunction f_hat, g_hat, V_hat, Lprime_hat;
    StageDiagnostics f_stage, g_stage;
    double v_integral = 0.0;     // trapezoid int_0^pi V_hat
    std::vector<LimitFit> f_fits, g_fits;
};

ReconstructionResult reconstruct(const NodalData& data, int grid_size, const InverseOptions& options = {});

/// CSV "x,f,g,V,Lprime".
void write_reconstruction_csv(const ReconstructionResult& r, std::ostream& out);

}  // namespace dnodal
