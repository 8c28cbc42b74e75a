#include "core/spectrum.hpp"

#include "core/asymptotics.hpp"
#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace dnodal {

namespace {

constexpr double pi = std::numbers::pi;

std::string describe(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e))
        return std::string(category_name(err->category())) + ": " + err->what();
    return std::string("internal: ") + e.what();
}

int sign(double v) { return (v > 0) - (v < 0); }

struct Bracket {
    double lo, hi, f_lo;
};

Bracket bisect(const IvpSolver& solver, Bracket b, double width) {
    while (b.hi - b.lo > width) {
        const double mid = 0.5 * (b.lo + b.hi);
        if (mid <= b.lo || mid >= b.hi) break;
        const double f = solver.characteristic(mid).normalized;
        if (f == 0.0) return {mid, mid, 0.0};
        if (sign(f) == sign(b.f_lo)) {
            b.lo = mid;
            b.f_lo = f;
        } else {
            b.hi = mid;
        }
    }
    return b;
}

void check_options(const SpectrumOptions& o) {
    if (!(o.tol > 0)) throw ConfigError("tol must be positive");
    if (!(o.max_lambda_h > 0)) throw ConfigError("max_lambda_h must be positive");
    if (!(o.half_width > 0 && o.half_width < 0.5)) throw ConfigError("half_width must be in (0, 0.5)");
    if (o.scan_samples < 3) throw ConfigError("scan_samples must be >= 3");
    if (!(o.node_tol > 0)) throw ConfigError("node_tol must be positive");
}

}  // namespace

int spectrum_intervals(const ProblemDefinition& problem, int n, const SpectrumOptions& o) {
    const double top = std::abs(lambda_asym(problem, n)) + o.half_width;
    return std::max({o.min_intervals, required_intervals(top, o.max_lambda_h)});
}

EigenResult find_eigenvalue(const ProblemDefinition& problem, int n, const SpectrumOptions& o) {
    check_options(o);
    if (n < 1) throw ConfigError("find_eigenvalue: n must be >= 1");
    const double seed = lambda_asym(problem, n);
    const int intervals = spectrum_intervals(problem, n, o);
    const IvpSolver solver(problem, intervals, o.forward);

    const int k = o.scan_samples;
    std::vector<double> xs(static_cast<std::size_t>(k)), fs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double lam = seed - o.half_width + 2 * o.half_width * i / (k - 1);
        xs[static_cast<std::size_t>(i)] = lam;
        fs[static_cast<std::size_t>(i)] = solver.characteristic(lam).normalized;
    }
    std::vector<Bracket> brackets;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (fs[i] == 0.0) {
            brackets.push_back({xs[i], xs[i], 0.0});
        } else if (sign(fs[i]) * sign(fs[i + 1]) < 0) {
            brackets.push_back({xs[i], xs[i + 1], fs[i]});
        }
    }
    if (fs.back() == 0.0) brackets.push_back({xs.back(), xs.back(), 0.0});

    if (brackets.empty()) {
        std::vector<double> samples;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            samples.push_back(xs[i]);
            samples.push_back(fs[i]);
        }
        std::ostringstream msg;
        msg.precision(10);
        msg << "no sign change of Delta/max(1, lambda^2) for n = " << n << " in [" << xs.front() << ", "
            << xs.back() << "] (" << k << " samples, seed " << seed << ")";
        throw BracketingError(msg.str(), std::move(samples));
    }
    if (brackets.size() > 1) {
        std::vector<double> roots;
        std::ostringstream msg;
        msg.precision(12);
        msg << brackets.size() << " sign changes for n = " << n << " near seed " << seed << ": candidates";
        for (const auto& b : brackets) {
            const auto r = bisect(solver, b, o.tol / 4);
            roots.push_back(0.5 * (r.lo + r.hi));
            msg << ' ' << roots.back();
        }
        throw AmbiguityError(msg.str(), std::move(roots));
    }
    // A quarter of tol keeps |Delta| <= tol max(1, lambda^2) given |Delta'| ~ pi lambda^2.
    const auto b = bisect(solver, brackets.front(), o.tol / 4);
    EigenResult r;
    r.n = n;
    r.lambda = 0.5 * (b.lo + b.hi);
    r.residual = std::abs(solver.characteristic(r.lambda).value);
    r.bracket_lo = b.lo;
    r.bracket_hi = b.hi;
    r.intervals = intervals;
    return r;
}

std::vector<double> find_nodes(const ProblemDefinition& problem, double lambda, int intervals, double tol,
                               const ForwardOptions& forward) {
    if (!(tol > 0)) throw ConfigError("node tolerance must be positive");
    const IvpSolver solver(problem, intervals, forward);
    const auto profile = solver.profile(lambda);
    const auto& y = profile.trajectory.phi1;
    const double h = solver.step();
    const auto N = static_cast<std::size_t>(intervals);
    std::vector<double> nodes;
    if (N < 3) return nodes;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double a = y[i], b = y[i + 1];
        if (a == 0.0) {
            nodes.push_back(profile.trajectory.grid[i]);
            continue;
        }
        if (sign(a) * sign(b) >= 0) continue;
        double lo = profile.trajectory.grid[i], hi = profile.trajectory.grid[i + 1];
        double f_lo = a;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double f = solver.evaluate(profile, mid)[0];
            if (f == 0.0) {
                lo = hi = mid;
                break;
            }
            if (sign(f) == sign(f_lo)) {
                lo = mid;
                f_lo = f;
            } else {
                hi = mid;
            }
        }
        nodes.push_back(0.5 * (lo + hi));
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i] - nodes[i - 1] < 2 * h) {
            const int need = 4 * intervals;
            throw ResolutionError("nodes at " + csv::number(nodes[i - 1]) + " and " + csv::number(nodes[i]) +
                                      " are closer than 2h; about " + std::to_string(need) +
                                      " intervals are required",
                                  need);
        }
    }
    return nodes;
}

Spectrum compute_spectrum(const ProblemDefinition& problem, int n_min, int n_max, const SpectrumOptions& o) {
    check_options(o);
    Spectrum s;
    if (n_max < n_min) return s;
    if (n_min < 1) throw ConfigError("n_min must be >= 1");
    const auto count = static_cast<std::size_t>(n_max - n_min + 1);
    std::vector<std::optional<EigenResult>> results(count);
    std::vector<std::string> errors(count);
    parallel_for(
        count,
        [&](std::size_t i) {
            try {
                results[i] = find_eigenvalue(problem, n_min + static_cast<int>(i), o);
            } catch (const std::exception& e) {
                errors[i] = describe(e);
            }
        },
        o.threads);
    for (std::size_t i = 0; i < count; ++i) {
        const int n = n_min + static_cast<int>(i);
        if (results[i]) {
            s.entries[n] = *results[i];
        } else {
            s.failures[n] = errors[i];
        }
    }
    return s;
}

NodalReport nodal_data(const ProblemDefinition& problem, int n_min, int n_max, const SpectrumOptions& o) {
    check_options(o);
    NodalReport report;
    report.data.source = NodalSource::numeric;
    if (n_max < n_min) return report;
    if (n_min < 1) throw ConfigError("n_min must be >= 1");
    const auto count = static_cast<std::size_t>(n_max - n_min + 1);
    std::vector<std::optional<EigenResult>> eig(count);
    std::vector<std::optional<std::vector<double>>> nodes(count);
    std::vector<std::string> errors(count);
    parallel_for(
        count,
        [&](std::size_t i) {
            const int n = n_min + static_cast<int>(i);
            try {
                eig[i] = find_eigenvalue(problem, n, o);
                nodes[i] = find_nodes(problem, eig[i]->lambda, eig[i]->intervals, o.node_tol, o.forward);
            } catch (const std::exception& e) {
                errors[i] = describe(e);
            }
        },
        o.threads);
    for (std::size_t i = 0; i < count; ++i) {
        const int n = n_min + static_cast<int>(i);
        if (eig[i]) report.spectrum.entries[n] = *eig[i];
        if (nodes[i]) {
            report.data.nodes[n] = std::move(*nodes[i]);
        } else {
            report.failures[n] = errors[i];
            if (!eig[i]) report.spectrum.failures[n] = errors[i];
        }
    }
    return report;
}

void write_spectrum_csv(const Spectrum& spectrum, std::ostream& out) {
    out << "n,lambda,residual\n";
    for (const auto& [n, e] : spectrum.entries)
        out << n << ',' << csv::number(e.lambda) << ',' << csv::number(e.residual) << '\n';
}

}  // namespace dnodal
