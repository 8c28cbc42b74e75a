#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace dnodal {

using ScalarFn = std::function<double(double)>;
using KernelFn = std::function<double(double, double)>;

/// Boundary data of the two eigenparameter-dependent conditions
///   (lambda cos theta + b1) y1(0) + (lambda sin theta + b2) y2(0) = 0,
///   (lambda cos beta  + d1) y1(pi) + (lambda sin beta + d2) y2(pi) = 0.
struct BoundaryParams {
    double theta = 0.0;
    double beta = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Shifts theta (and beta) into (-pi/2, pi/2]. A shift by an odd multiple of
/// pi is compensated by negating (b1, b2) (resp. (d1, d2)), which multiplies
/// the boundary condition by -1 and leaves the problem unchanged.
BoundaryParams canonicalize(const BoundaryParams& bc);

/// Canonical representative of an angle modulo pi in (-pi/2, pi/2].
double canonical_angle(double angle);

/// a(x) b(t)
struct SeparableTerm {
    ScalarFn a;
    ScalarFn b;
};

/// One entry chi_ik(x, t) of the Volterra kernel, defined on 0 <= t <= x <= pi.
/// Separable entries let the forward solver carry the memory integral in
/// running accumulators instead of re-summing the history.
class KernelEntry {
public:
    enum class Kind { zero, separable, general };

    KernelEntry() = default;
    static KernelEntry separable(std::vector<SeparableTerm> terms);
    static KernelEntry general(KernelFn fn);

    Kind kind() const noexcept { return kind_; }
    bool is_zero() const noexcept { return kind_ == Kind::zero; }
    const std::vector<SeparableTerm>& terms() const noexcept { return terms_; }
    double operator()(double x, double t) const;

private:
    Kind kind_ = Kind::zero;
    std::vector<SeparableTerm> terms_;
    KernelFn general_;
};

struct CoefficientSet {
    ScalarFn V;
    double m = 0.0;
    /// Row-major: chi[0] = chi_11, chi[1] = chi_12, chi[2] = chi_21, chi[3] = chi_22.
    std::array<KernelEntry, 4> chi;

    double p(double x) const { return V(x) + m; }
    double r(double x) const { return V(x) - m; }
    const KernelEntry& chi_at(int row, int col) const { return chi[static_cast<std::size_t>(2 * row + col)]; }
    bool has_kernel() const;
};

/// Raw, unvalidated problem input.
struct ProblemData {
    BoundaryParams bc;
    CoefficientSet coeffs;
    int quadrature_points = 4097;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    double zero_mean_residual = 0.0;

    bool ok() const;
    std::string summary() const;
};

constexpr double default_zero_mean_tolerance = 1e-6;

/// Checks the standing assumptions: finite data, V and the kernel evaluable
/// to finite values on their domains, and int_0^pi V = 0.
ValidationReport validate(const ProblemData& data, double zero_mean_tol = default_zero_mean_tolerance);

/// nu(x) = int_0^x V, K(x) = int_0^x (chi_11 + chi_22)(t,t) dt,
/// L(x) = int_0^x (chi_12 - chi_21)(t,t) dt, sampled on a uniform grid over
/// [0, pi] by cumulative trapezoid sums.
struct DerivedIntegrals {
    std::vector<double> grid;
    std::vector<double> nu;
    std::vector<double> K;
    std::vector<double> L;

    double nu_at(double x) const { return interpolate(nu, x); }
    double K_at(double x) const { return interpolate(K, x); }
    double L_at(double x) const { return interpolate(L, x); }

private:
    double interpolate(const std::vector<double>& values, double x) const;
};

DerivedIntegrals derived_integrals(const CoefficientSet& coeffs, int grid_size);

/// Validated, immutable problem. Copies share state.
class ProblemDefinition {
public:
    /// Canonicalizes the boundary angles and validates; throws InvalidProblem
    /// (or ConfigError for a bad quadrature size) when a hard check fails.
    static ProblemDefinition create(ProblemData data,
                                    double zero_mean_tol = default_zero_mean_tolerance);

    const BoundaryParams& bc() const noexcept { return state_->data.bc; }
    const CoefficientSet& coeffs() const noexcept { return state_->data.coeffs; }
    int quadrature_points() const noexcept { return state_->data.quadrature_points; }
    const DerivedIntegrals& integrals() const noexcept { return state_->integrals; }
    const ValidationReport& validation() const noexcept { return state_->report; }
    const ProblemData& data() const noexcept { return state_->data; }

private:
    struct State {
        ProblemData data;
        DerivedIntegrals integrals;
        ValidationReport report;
    };
    explicit ProblemDefinition(std::shared_ptr<const State> s) : state_(std::move(s)) {}
    std::shared_ptr<const State> state_;
};

}  // namespace dnodal
