#pragma once

#include "core/problem.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace dnodal {

/// Solution (phi1, phi2) of the initial-value problem at one real lambda,
/// sampled on the uniform grid x_i = i h, h = pi / intervals.
struct Trajectory {
    double lambda = 0.0;
    double step = 0.0;
    std::vector<double> grid;
    std::vector<double> phi1;
    std::vector<double> phi2;
};

/// Working resolution for eigenvalue and node computations: |lambda| h <= 0.02.
constexpr double default_max_lambda_h = 0.02;

struct ForwardOptions {
    /// Upper bound on |lambda| h (about 31 samples per wavelength at 0.2).
    double guard = 0.2;
};

/// Smallest interval count with |lambda| pi / intervals <= max_lambda_h.
int required_intervals(double lambda, double max_lambda_h);

struct CharacteristicValue {
    double value = 0.0;       // Delta(lambda)
    double normalized = 0.0;  // Delta(lambda) / max(1, lambda^2)
};

/// Fixed-grid integrator for
///   y1' = (r - lambda) y2 + M2,   y2' = (lambda - p) y1 - M1,
///   M(x) = int_0^x chi(x, t) Y(t) dt,
/// started from phi(0) = (lambda sin theta + b2, -(lambda cos theta + b1)),
/// which satisfies the left boundary condition identically.
///
/// Classical RK4 on the grid; the memory integral is a composite trapezoid
/// over the computed history, closed by the current stage value. Separable
/// kernel entries are carried in running accumulators (O(N) per solve);
/// general entries are re-summed at every stage (O(N^2)).
///
/// Coefficients are sampled once per instance, so one solver should be
/// reused for many lambda values on the same grid. Instances are immutable
/// and safe to share between threads.
class IvpSolver {
public:
    IvpSolver(ProblemDefinition problem, int intervals, ForwardOptions options = {});

    int intervals() const noexcept { return intervals_; }
    double step() const noexcept { return h_; }
    const ProblemDefinition& problem() const noexcept { return problem_; }

    /// Throws ResolutionError when |lambda| h exceeds the guard and
    /// MagnitudeError on overflow.
    Trajectory solve(double lambda) const;
    CharacteristicValue characteristic(double lambda) const;

    /// Trajectory plus the memory accumulators at every grid point; enough
    /// state to re-evaluate the solution anywhere without re-integrating.
    struct Profile {
        Trajectory trajectory;
        std::vector<double> memory;  // (intervals + 1) x terms, row-major
    };
    Profile profile(double lambda) const;

    /// Solution at an arbitrary x in [0, pi] by one RK4 step of length
    /// x - x_i from the grid point at or below x.
    std::array<double, 2> evaluate(const Profile& profile, double x) const;

private:
    struct Term {
        int row;
        int col;
        const SeparableTerm* fn;
    };
    struct General {
        int row;
        int col;
        const KernelEntry* entry;
    };
    struct Stage {
        double V, H1, H2, W11, W12, W21, W22, half_dx;
    };

    Stage prepare(std::size_t i, double dx, long half_index, const double* y1, const double* y2,
                  const double* memory) const;
    void integrate(double lambda, Trajectory& traj, std::vector<double>* memory) const;
    static std::array<double, 2> rhs(const Stage& s, double lambda, double m, double y1, double y2);

    ProblemDefinition problem_;
    int intervals_;
    double h_;
    ForwardOptions options_;
    std::vector<Term> terms_;
    std::vector<General> general_;
    std::vector<double> v_half_;             // V at x = k h / 2
    std::vector<std::vector<double>> a_half_;  // per term
    std::vector<std::vector<double>> b_half_;
    std::vector<std::array<double, 4>> w_half_;  // chi(x, x)
};

Trajectory integrate_ivp(const ProblemDefinition& problem, double lambda, int intervals,
                         const ForwardOptions& options = {});

CharacteristicValue char_fn(const ProblemDefinition& problem, double lambda, int intervals,
                            const ForwardOptions& options = {});

/// CSV with header "x,phi1,phi2".
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace dnodal
