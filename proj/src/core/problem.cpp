#include "core/problem.hpp"

#include "core/error.hpp"
#include "core/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dnodal {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kernel_probe = 33;

const char* entry_name(std::size_t i) {
    static const char* names[] = {"chi_11", "chi_12", "chi_21", "chi_22"};
    return names[i];
}

std::string point_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

double canonical_angle(double angle) {
    double a = std::remainder(angle, pi);  // [-pi/2, pi/2]
    if (a <= -pi / 2) a += pi;
    return a;
}

BoundaryParams canonicalize(const BoundaryParams& bc) {
    BoundaryParams out = bc;
    const auto shift = [](double angle, double& c1, double& c2) {
        const double canon = canonical_angle(angle);
        const auto k = static_cast<long long>(std::llround((angle - canon) / pi));
        if (k % 2 != 0) {
            c1 = -c1;
            c2 = -c2;
        }
        return canon;
    };
    out.theta = shift(bc.theta, out.b1, out.b2);
    out.beta = shift(bc.beta, out.d1, out.d2);
    return out;
}

KernelEntry KernelEntry::separable(std::vector<SeparableTerm> terms) {
    KernelEntry e;
    if (terms.empty()) return e;
    e.kind_ = Kind::separable;
    e.terms_ = std::move(terms);
    return e;
}

KernelEntry KernelEntry::general(KernelFn fn) {
    KernelEntry e;
    e.kind_ = Kind::general;
    e.general_ = std::move(fn);
    return e;
}

double KernelEntry::operator()(double x, double t) const {
    switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::general: return general_(x, t);
    case Kind::separable: {
        double s = 0.0;
        for (const auto& term : terms_) s += term.a(x) * term.b(t);
        return s;
    }
    }
    return 0.0;
}

bool CoefficientSet::has_kernel() const {
    for (const auto& e : chi)
        if (!e.is_zero()) return true;
    return false;
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        if (!out.empty()) out += "; ";
        out += c.name + (c.passed ? ": ok" : ": FAILED");
        if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
    return out;
}

ValidationReport validate(const ProblemData& data, double zero_mean_tol) {
    ValidationReport report;
    const auto& bc = data.bc;
    const auto& co = data.coeffs;

    {
        ValidationCheck c{"finite-boundary-data", true, {}};
        const double vals[] = {bc.theta, bc.beta, bc.b1, bc.b2, bc.d1, bc.d2};
        const char* names[] = {"theta", "beta", "b1", "b2", "d1", "d2"};
        for (int i = 0; i < 6; ++i) {
            if (!std::isfinite(vals[i])) {
                c.passed = false;
                c.detail = std::string(names[i]) + " is not finite";
                break;
            }
        }
        report.checks.push_back(c);
    }
    {
        ValidationCheck c{"finite-mass", true, {}};
        if (!std::isfinite(co.m)) {
            c.passed = false;
            c.detail = "m is not finite";
        }
        report.checks.push_back(c);
    }

    const int q = data.quadrature_points;
    const double h = q > 1 ? pi / (q - 1) : pi;
    std::vector<double> vs;
    {
        ValidationCheck c{"finite-potential", true, {}};
        if (!co.V) {
            c.passed = false;
            c.detail = "V is not defined";
        } else if (q < 2) {
            c.passed = false;
            c.detail = "quadrature_points must be >= 2";
        } else {
            vs.resize(static_cast<std::size_t>(q));
            for (int i = 0; i < q; ++i) {
                const double x = i * h;
                vs[static_cast<std::size_t>(i)] = co.V(x);
                if (!std::isfinite(vs[static_cast<std::size_t>(i)])) {
                    c.passed = false;
                    c.detail = "V(" + point_string(x) + ") is not finite";
                    vs.clear();
                    break;
                }
            }
        }
        report.checks.push_back(c);
    }
    {
        ValidationCheck c{"kernel-evaluable", true, {}};
        for (std::size_t e = 0; e < 4 && c.passed; ++e) {
            const auto& entry = co.chi[e];
            if (entry.is_zero()) continue;
            for (int i = 0; i < kernel_probe && c.passed; ++i) {
                const double x = pi * i / (kernel_probe - 1);
                for (int k = 0; k <= i; ++k) {
                    const double t = pi * k / (kernel_probe - 1);
                    if (!std::isfinite(entry(x, t))) {
                        c.passed = false;
                        c.detail = std::string(entry_name(e)) + "(" + point_string(x) + ", " +
                                   point_string(t) + ") is not finite";
                        break;
                    }
                }
            }
        }
        report.checks.push_back(c);
    }
    {
        ValidationCheck c{"zero-mean-potential", true, {}};
        if (vs.empty()) {
            c.passed = false;
            c.detail = "not evaluated";
        } else {
            const auto cum = numerics::cumulative_trapezoid(vs, h);
            report.zero_mean_residual = cum.back();
            if (std::abs(cum.back()) > zero_mean_tol) {
                c.passed = false;
                c.detail = "int_0^pi V = " + point_string(cum.back());
            }
        }
        report.checks.push_back(c);
    }
    return report;
}

double DerivedIntegrals::interpolate(const std::vector<double>& values, double x) const {
    if (grid.size() < 2) return values.empty() ? 0.0 : values.front();
    if (x == 0.0) return values.front();
    const double h = grid[1] - grid[0];
    return numerics::interpolate_uniform(values, 0.0, h, x);
}

DerivedIntegrals derived_integrals(const CoefficientSet& coeffs, int grid_size) {
    if (grid_size < 2) throw ConfigError("derived_integrals: grid_size must be >= 2");
    const auto n = static_cast<std::size_t>(grid_size);
    const double h = pi / (grid_size - 1);
    DerivedIntegrals d;
    d.grid.resize(n);
    std::vector<double> v(n), trace(n), skew(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i == n - 1 ? pi : static_cast<double>(i) * h;
        d.grid[i] = x;
        v[i] = coeffs.V ? coeffs.V(x) : 0.0;
        trace[i] = coeffs.chi[0](x, x) + coeffs.chi[3](x, x);
        skew[i] = coeffs.chi[1](x, x) - coeffs.chi[2](x, x);
    }
    d.nu = numerics::cumulative_trapezoid(v, h);
    d.K = numerics::cumulative_trapezoid(trace, h);
    d.L = numerics::cumulative_trapezoid(skew, h);
    return d;
}

ProblemDefinition ProblemDefinition::create(ProblemData data, double zero_mean_tol) {
    if (data.quadrature_points < 2) throw ConfigError("quadrature_points must be >= 2");
    data.bc = canonicalize(data.bc);
    auto report = validate(data, zero_mean_tol);
    if (!report.ok()) throw InvalidProblem("invalid problem: " + report.summary());
    auto integrals = derived_integrals(data.coeffs, data.quadrature_points);
    return ProblemDefinition(std::make_shared<const State>(
        State{std::move(data), std::move(integrals), std::move(report)}));
}

}  // namespace dnodal
