// Acceptance suite: one verdict line per criterion. Tolerances are fixed here.
//   acceptance [--criterion N]

#include "core/asymptotics.hpp"
#include "core/error.hpp"
#include "core/fixtures.hpp"
#include "core/forward.hpp"
#include "core/inverse.hpp"
#include "core/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace dnodal;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string text;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!text.empty()) text += "; ";
        text += (ok ? "" : "FAILED ") + what;
    }
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void detail(const std::string& s) { std::printf("#   %s\n", s.c_str()); }

struct Errors {
    double theta, beta, m, V, Lprime;
};

template <class VFn, class LFn>
Errors errors(const ReconstructionResult& r, double theta, double beta, double m, VFn V, LFn Lp) {
    Errors e{std::abs(r.theta_hat - theta), std::abs(r.beta_hat - beta), std::abs(r.m_hat - m), 0.0, 0.0};
    for (std::size_t k = 1; k + 1 < r.V_hat.size(); ++k) {
        const double x = r.V_hat.x[k];
        e.V = std::max(e.V, std::abs(r.V_hat.y[k] - V(x)));
        e.Lprime = std::max(e.Lprime, std::abs(r.Lprime_hat.y[k] - Lp(x)));
    }
    return e;
}

Errors example_errors(const ReconstructionResult& r) {
    return errors(r, pi / 4, pi / 4, 1.0, [](double x) { return x / 2 - pi / 4; }, [](double x) { return pi / 2 - x; });
}

Errors roundtrip_errors(const ReconstructionResult& r) {
    return errors(r, 0.3, 0.1, 0.5, [](double x) { return std::cos(x); },
                  [](double x) { return std::sin(x) - 2 / pi; });
}

// Interior zero count of phi1 for large n.
int expected_count(const ProblemDefinition& p, int n) {
    return n - 1 + (p.bc().theta < 0 ? 1 : 0) + (p.bc().beta > 0 ? 1 : 0);
}

double mass_error(int intervals) {
    const auto t = integrate_ivp(fixtures::constant_mass(1.0), 5.0, intervals);
    const double w = std::sqrt(24.0);
    double e = 0.0;
    for (std::size_t i = 0; i < t.grid.size(); ++i)
        e = std::max(e, std::abs(t.phi1[i] - 5.0 * 6.0 / w * std::sin(w * t.grid[i])));
    return e;
}

// ---------------------------------------------------------------------------

Verdict criterion_1() {
    Verdict v;
    const auto r = reconstruct(synthesize_nodal_data(fixtures::worked_example(0.3, -0.2), 50, 400), 65);
    const auto e = example_errors(r);
    v.check(e.theta <= 1e-3, fmt("|theta-pi/4|=%.3g<=%.0e", e.theta, 1e-3));
    v.check(e.beta <= 1e-3, fmt("|beta-pi/4|=%.3g<=%.0e", e.beta, 1e-3));
    v.check(e.V <= 1e-2, fmt("sup|V-V0|=%.3g<=%.0e", e.V, 1e-2));
    v.check(e.m <= 1e-2, fmt("|m-1|=%.3g<=%.0e", e.m, 1e-2));
    v.check(e.Lprime <= 5e-2, fmt("sup|L'-L'0|=%.3g<=%.0e", e.Lprime, 5e-2));
    return v;
}

Verdict criterion_2() {
    Verdict v;
    SpectrumOptions o;
    o.tol = 1e-12;
    o.max_lambda_h = 0.003;
    const auto rep = nodal_data(fixtures::free_problem(), 5, 30, o);
    double lam_err = 0.0, node_err = 0.0;
    bool counts = rep.failures.empty() && rep.data.nodes.size() == 26;
    for (const auto& [n, e] : rep.spectrum.entries) lam_err = std::max(lam_err, std::abs(e.lambda - n));
    for (const auto& [n, list] : rep.data.nodes) {
        counts = counts && list.size() == static_cast<std::size_t>(n - 1);
        for (std::size_t k = 0; k < list.size(); ++k)
            node_err = std::max(node_err, std::abs(list[k] - (k + 1.0) * pi / n));
    }
    const auto r = reconstruct(rep.data, 65);
    double f = 0.0, g = 0.0;
    for (std::size_t k = 0; k < r.f_hat.size(); ++k) {
        f = std::max(f, std::abs(r.f_hat.y[k]));
        g = std::max(g, std::abs(r.g_hat.y[k]));
    }
    v.check(lam_err <= 1e-10, fmt("max|lambda_n-n|=%.3g<=%.0e", lam_err, 1e-10));
    v.check(node_err <= 1e-10, fmt("max|x-j pi/n|=%.3g<=%.0e", node_err, 1e-10));
    v.check(counts, "count n-1 for n in [5,30]");
    v.check(f <= 1e-6, fmt("sup|f|=%.3g<=%.0e", f, 1e-6));
    v.check(g <= 1e-6, fmt("sup|g|=%.3g<=%.0e", g, 1e-6));
    return v;
}

Verdict criterion_3() {
    Verdict v;
    // Guard resolution: the fewest intervals with lambda h <= 0.2.
    const int guard_n = required_intervals(5.0, ForwardOptions{}.guard);
    const double e1 = mass_error(guard_n);
    const double e2 = mass_error(2 * guard_n);
    const double e4 = mass_error(4 * guard_n);
    const int work_n = required_intervals(5.0, default_max_lambda_h);
    const double ew = mass_error(work_n);
    v.check(e1 <= 1e-6, fmt("sup err at lambda h=0.2 (N=%d) %.3g<=1e-6", guard_n, e1));
    v.check(e1 / e2 >= 8.0 && e2 / e4 >= 8.0, fmt("halving factors %.3g, %.3g>=8", e1 / e2, e2 / e4));
    detail(fmt("at the working resolution lambda h=0.02 (N=%d) the sup error is %.3g", work_n, ew));
    return v;
}

Verdict criterion_4() {
    Verdict v;
    const auto p = fixtures::worked_example(0.0, 0.0);
    const auto s = compute_spectrum(p, 30, 60);
    v.check(s.failures.empty(), "all eigenvalues found");
    double lo = 1e300, hi = -1e300, worst = 0.0;
    for (const auto& [n, e] : s.entries) {
        const double c = (e.lambda - n) * n * pi;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        worst = std::max(worst, std::abs(c - pi / 2) / (pi / 2));
    }
    v.check(worst <= 0.1, fmt("(lambda_n-n) n pi in [%.4f, %.4f]", lo, hi) + fmt(", max rel dev from pi/2 %.3g<=0.1", worst));
    return v;
}

Verdict criterion_5() {
    Verdict v;
    const auto p = fixtures::worked_example();
    const auto rep = nodal_data(p, 20, 60);
    v.check(rep.failures.empty(), "all node lists computed");
    std::vector<double> ns, scaled;
    for (const auto& [n, list] : rep.data.nodes) {
        double e = 0.0;
        for (std::size_t k = 0; k < list.size(); ++k)
            e = std::max(e, std::abs(list[k] - node_asym(p, n, static_cast<int>(k) + 1)));
        ns.push_back(n);
        scaled.push_back(e * n * n);
    }
    // Least-squares slope of the scaled error against n.
    const double mn = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
    const double ms = std::accumulate(scaled.begin(), scaled.end(), 0.0) / scaled.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        sxy += (ns[i] - mn) * (scaled[i] - ms);
        sxx += (ns[i] - mn) * (ns[i] - mn);
    }
    const double drift = sxy / sxx * (ns.back() - ns.front()) / ms;
    const auto [mi, ma] = std::minmax_element(scaled.begin(), scaled.end());
    v.check(*ma <= 2.0 * *mi, fmt("err n^2 in [%.4f, %.4f]", *mi, *ma));
    v.check(drift <= 0.1, fmt("relative trend over the range %.3g<=0.1", drift));
    return v;
}

Verdict criterion_6() {
    Verdict v;
    const auto rep = nodal_data(fixtures::roundtrip_problem(), 20, 120);
    v.check(rep.failures.empty(), "all node lists computed");
    const auto r = reconstruct(rep.data, 65);
    const auto e = roundtrip_errors(r);
    v.check(e.V <= 5e-2, fmt("sup|V-cos|=%.3g<=%.0e", e.V, 5e-2));
    v.check(e.theta <= 5e-3, fmt("|theta-0.3|=%.3g<=%.0e", e.theta, 5e-3));
    v.check(e.beta <= 5e-3, fmt("|beta-0.1|=%.3g<=%.0e", e.beta, 5e-3));
    v.check(e.m <= 5e-2, fmt("|m-0.5|=%.3g<=%.0e", e.m, 5e-2));
    detail(fmt("m_hat=%.6f, sup|L'-L'0|=%.3g (no tolerance set)", r.m_hat, e.Lprime));
    return v;
}

Verdict criterion_7() {
    Verdict v;
    const auto p = fixtures::worked_example();
    std::vector<double> s;
    std::string values;
    for (double lam : {20.0, 40.0, 80.0}) {
        const auto t = integrate_ivp(p, lam, required_intervals(lam, 0.005));
        double e = 0.0;
        for (std::size_t i = 0; i < t.grid.size(); ++i) e = std::max(e, std::abs(t.phi1[i] - phi_asym(p, t.grid[i], lam)[0]));
        s.push_back(e * lam);
        values += fmt("%s%.4f", values.empty() ? "" : ", ", e * lam);
    }
    v.check(s[1] <= s[0] && s[2] <= s[1], "sup|phi1-phi1_asym| lambda non-increasing over lambda=20,40,80: " + values);
    return v;
}

// ---------------------------------------------------------------------------
// Criterion 8: every invariant and property, on every fixture it applies to.

struct Fixture {
    const char* name;
    ProblemDefinition p;
};

std::vector<Fixture> fixtures_all() {
    return {{"free", fixtures::free_problem()},
            {"example", fixtures::worked_example()},
            {"roundtrip", fixtures::roundtrip_problem()},
            {"mass", fixtures::constant_mass(1.0)}};
}

Verdict criterion_8() {
    Verdict v;
    const auto fx = fixtures_all();
    const auto sub = [&](const std::string& name, bool ok, const std::string& info) {
        detail(std::string(ok ? "PASS " : "FAIL ") + name + (info.empty() ? "" : ": " + info));
        v.pass = v.pass && ok;
        if (!ok) v.text += (v.text.empty() ? "" : ", ") + name;
    };

    // problem model
    {
        bool ok = true;
        double worst = 0.0;
        for (const auto& f : fx) {
            const auto& in = f.p.integrals();
            ok = ok && in.nu.front() == 0.0 && in.K.front() == 0.0 && in.L.front() == 0.0;
            worst = std::max(worst, std::abs(in.nu.back()));
            const auto& c = f.p.coeffs();
            for (double x : in.grid) ok = ok && std::abs(c.p(x) - c.r(x) - 2 * c.m) <= 1e-15 * std::max(1.0, std::abs(c.m));
        }
        sub("integrals vanish at 0, |nu(pi)| small, p - r = 2m", ok && worst <= 1e-9, fmt("max|nu(pi)|=%.3g", worst));

        const auto& c = fixtures::roundtrip_problem().coeffs();
        const auto a = derived_integrals(c, 257), b = derived_integrals(c, 513);
        double ea = 0.0, eb = 0.0;
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            const double x = a.grid[i];
            const double L = 1.0 - std::cos(x) - 2 * x / pi;
            ea = std::max({ea, std::abs(a.nu[i] - std::sin(x)), std::abs(a.L[i] - L)});
            eb = std::max({eb, std::abs(b.nu[2 * i] - std::sin(x)), std::abs(b.L[2 * i] - L)});
        }
        sub("quadrature doubling factor about 4", std::abs(ea / eb - 4.0) <= 0.4, fmt("factor %.4f", ea / eb));
    }

    // forward solver
    {
        double worst = 0.0;
        for (const auto& f : fx)
            for (double lam : {-3.0, 0.0, 2.5, 17.0, 60.0}) {
                const auto t = integrate_ivp(f.p, lam, required_intervals(lam, 0.2) + 1);
                const auto& bc = f.p.bc();
                const double res = (lam * std::cos(bc.theta) + bc.b1) * t.phi1[0] + (lam * std::sin(bc.theta) + bc.b2) * t.phi2[0];
                worst = std::max(worst, std::abs(res) / std::max(1.0, lam * lam));
            }
        sub("boundary residual at x = 0", worst <= 1e-15, fmt("max scaled residual %.3g", worst));
        const double e1 = mass_error(79), e2 = mass_error(158), e3 = mass_error(316);
        sub("constant-mass convergence factor >= 8", e1 / e2 >= 8 && e2 / e3 >= 8, fmt("factors %.3g, %.3g", e1 / e2, e2 / e3));
    }
    {
        // Integral-equation self-consistency on the example (second-order oracle).
        const auto p = fixtures::worked_example();
        const auto residual = [&](int N) {
            const auto t = integrate_ivp(p, 4.0, N);
            const auto& c = p.coeffs();
            const auto& bc = p.bc();
            const std::size_t n = t.grid.size();
            const double h = t.step;
            std::vector<double> F(n), G(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = t.grid[i];
                double M[2] = {0.0, 0.0};
                if (i > 0)
                    for (int row = 0; row < 2; ++row) {
                        double s = 0.0;
                        for (std::size_t k = 0; k <= i; ++k)
                            s += (k == 0 || k == i ? 0.5 : 1.0) *
                                 (c.chi_at(row, 0)(x, t.grid[k]) * t.phi1[k] + c.chi_at(row, 1)(x, t.grid[k]) * t.phi2[k]);
                        M[row] = s * h;
                    }
                F[i] = c.p(x) * t.phi1[i] + M[0];
                G[i] = c.r(x) * t.phi2[i] + M[1];
            }
            double r = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                const double x = t.grid[i];
                double I1 = 0.0, I2 = 0.0;
                for (std::size_t k = 0; k <= i; ++k) {
                    const double w = k == 0 || k == i ? 0.5 : 1.0;
                    const double s = std::sin(4.0 * (x - t.grid[k])), co = std::cos(4.0 * (x - t.grid[k]));
                    I1 += w * (F[k] * s + G[k] * co);
                    I2 += w * (-F[k] * co + G[k] * s);
                }
                const double e1 = 4 * std::sin(bc.theta + 4 * x) + bc.b1 * std::sin(4 * x) + bc.b2 * std::cos(4 * x) + h * I1;
                const double e2 = -4 * std::cos(bc.theta + 4 * x) - bc.b1 * std::cos(4 * x) + bc.b2 * std::sin(4 * x) + h * I2;
                r = std::max({r, std::abs(e1 - t.phi1[i]), std::abs(e2 - t.phi2[i])});
            }
            return r;
        };
        const double a = residual(1000), b = residual(2000);
        sub("integral equations reproduce the trajectory", b <= 5e-4 && a / b >= 3.5,
            fmt("residual %.3g at N=2000, ratio %.3g on halving", b, a / b));
    }

    // spectrum
    for (const auto& f : fx) {
        SpectrumOptions o;
        const auto rep = nodal_data(f.p, 5, 40, o);
        bool resid = true, order = true, corridor = true, alternation = true, count = true;
        int n0 = 5;
        for (const auto& [n, msg] : rep.failures) n0 = std::max(n0, n + 1);
        for (const auto& [n, list] : rep.data.nodes)
            if (static_cast<int>(list.size()) != expected_count(f.p, n)) n0 = std::max(n0, n + 1);
        count = n0 <= 10;
        double prev = -1e300;
        const auto& bc = f.p.bc();
        for (const auto& [n, e] : rep.spectrum.entries) {
            resid = resid && e.residual <= o.tol * std::max(1.0, e.lambda * e.lambda);
            order = order && e.lambda > prev;
            prev = e.lambda;
            corridor = corridor && std::abs(e.lambda - n - (bc.beta - bc.theta) / pi) <= 1.0;
        }
        for (const auto& [n, list] : rep.data.nodes) {
            const auto& e = rep.spectrum.entries.at(n);
            const IvpSolver solver(f.p, e.intervals);
            const auto prof = solver.profile(e.lambda);
            std::vector<double> mids;
            for (std::size_t k = 0; k < list.size(); ++k) {
                order = order && (k == 0 || list[k - 1] < list[k]);
                mids.push_back(0.5 * ((k == 0 ? 0.0 : list[k - 1]) + list[k]));
            }
            mids.push_back(0.5 * (list.back() + pi));
            for (std::size_t k = 0; k + 1 < mids.size(); ++k)
                alternation = alternation && solver.evaluate(prof, mids[k])[0] * solver.evaluate(prof, mids[k + 1])[0] < 0;
        }
        const std::string tag = std::string(" [") + f.name + "]";
        sub("|Delta(lambda_n)| <= tol max(1, lambda_n^2)" + tag, resid, "");
        sub("eigenvalues and nodes strictly increasing, corridor within 1" + tag, order && corridor, "");
        sub("phi1 alternates sign between nodes" + tag, alternation, "");
        sub("node count n - 1 + [theta<0] + [beta>0] from N0 <= 10" + tag, count, fmt("N0=%d", n0));
    }
    for (const auto& f : fx) {
        const auto& bc = f.p.bc();
        const auto s = compute_spectrum(f.p, 30, 60);
        if (!s.failures.empty()) {
            sub(std::string("corridor converges [") + f.name + "]", false, "eigenvalue failures");
            continue;
        }
        const auto scaled = [&](int n) { return (s.entries.at(n).lambda - n - (bc.beta - bc.theta) / pi) * n; };
        const double target = asymptotic_constants(f.p).C_hat / pi;
        double spread = 0.0;
        for (int n = 30; n <= 60; ++n) spread = std::max(spread, std::abs(scaled(n) - scaled(60)));
        const double scale = std::max(std::abs(scaled(60)), 1e-3);
        const bool ok = spread <= 0.1 * scale && std::abs(scaled(60) - target) <= std::max(0.1 * std::abs(target), 1e-3);
        sub(std::string("corridor (lambda_n - n - (beta-theta)/pi) n Cauchy and -> C_hat/pi [") + f.name + "]", ok,
            fmt("value %.4f, C_hat/pi %.4f", scaled(60), target) + fmt(", spread %.3g", spread));
    }

    // asymptotics
    {
        double worst = 0.0;
        for (const auto& f : fx)
            for (double lam : {-5.0, 1.0, 30.0, 500.0}) {
                const auto a = phi_asym(f.p, 0.0, lam);
                const auto& bc = f.p.bc();
                worst = std::max(worst, std::abs((lam * std::cos(bc.theta) + bc.b1) * a[0] + (lam * std::sin(bc.theta) + bc.b2) * a[1]) /
                                            std::max(1.0, lam * lam));
            }
        sub("phi_asym satisfies the left condition", worst <= 1e-14, fmt("max scaled residual %.3g", worst));
    }
    for (const auto& f : fx) {
        // Reference roots at a resolution where the solver's phase error
        // (about 1e-7 at n = 160 with lambda h = 0.02) is out of the way.
        SpectrumOptions o;
        o.max_lambda_h = 0.003;
        o.tol = 1e-12;
        std::vector<double> s;
        std::string vals;
        for (int n : {10, 20, 40, 80, 160}) {
            const double e = std::abs(lambda_asym(f.p, n) - find_eigenvalue(f.p, n, o).lambda) * n;
            s.push_back(e);
            vals += fmt("%s%.3g", vals.empty() ? "" : ", ", e);
        }
        bool ok = true;
        // Where the remainder vanishes identically (free problem) only solver
        // noise is left; treat values below 1e-7 as zero.
        for (std::size_t i = 1; i < s.size(); ++i) ok = ok && (s[i] < s[i - 1] || s[i] <= 1e-7);
        sub(std::string("(lambda_asym - lambda_n) n bounded and decreasing [") + f.name + "]", ok && s[0] < 1.0, vals);
    }
    for (const auto& f : fx) {
        const auto rep = nodal_data(f.p, 20, 60);
        double lo = 1e300, hi = 0.0;
        for (const auto& [n, list] : rep.data.nodes) {
            double e = 0.0;
            for (std::size_t k = 0; k < list.size(); ++k) {
                // Match each node to the phase index of the nearest prediction.
                const int j0 = static_cast<int>(std::lround(list[k] * n / pi));
                double best = 1e300;
                for (int j = std::max(0, j0 - 1); j <= std::min(n, j0 + 1); ++j)
                    best = std::min(best, std::abs(list[k] - node_asym(f.p, n, j)));
                e = std::max(e, best);
            }
            lo = std::min(lo, e * n * n);
            hi = std::max(hi, e * n * n);
        }
        sub(std::string("(node_asym - node) n^2 bounded [") + f.name + "]", rep.failures.empty() && hi <= 10.0,
            fmt("range [%.3g, %.3g]", lo, hi));
    }
    {
        const auto d = synthesize_nodal_data(fixtures::free_problem(), 5, 60);
        const auto r = reconstruct(d, 65);
        double f = 0.0;
        for (double y : r.f_hat.y) f = std::max(f, std::abs(y));
        sub("synthetic zero data gives f = 0", f <= 1e-10, fmt("sup|f|=%.3g", f));
    }

    // inverse
    {
        bool ident = true;
        double vint = 0.0;
        for (const auto& p : {fixtures::worked_example(), fixtures::roundtrip_problem()}) {
            const auto r = reconstruct(synthesize_nodal_data(p, 30, 200), 65);
            const auto fp = differentiate(r.f_hat, 7);
            const double slope = (r.f_hat.y.back() - r.f_hat.y.front()) / pi;
            for (std::size_t k = 0; k < r.V_hat.size(); ++k) ident = ident && std::abs(r.V_hat.y[k] - (fp.y[k] - slope)) <= 1e-12;
            vint = std::max(vint, std::abs(r.v_integral));
        }
        sub("V_hat = f_hat' - (f_hat(pi) - f_hat(0))/pi", ident, "");
        sub("integral of V_hat near zero", vint <= 1e-3, fmt("max |int V_hat|=%.3g", vint));
    }
    for (int which = 0; which < 2; ++which) {
        const auto p = which ? fixtures::roundtrip_problem() : fixtures::worked_example();
        std::vector<Errors> e;
        for (int n_max : {50, 100, 200, 400}) {
            const auto r = reconstruct(synthesize_nodal_data(p, 20, n_max), 65);
            e.push_back(which ? roundtrip_errors(r) : example_errors(r));
        }
        std::string bad;
        const char* names[] = {"theta", "beta", "m", "V", "L'"};
        for (std::size_t i = 1; i < e.size(); ++i) {
            const double now[] = {e[i].theta, e[i].beta, e[i].m, e[i].V, e[i].Lprime};
            const double before[] = {e[i - 1].theta, e[i - 1].beta, e[i - 1].m, e[i - 1].V, e[i - 1].Lprime};
            for (int q = 0; q < 5; ++q)
                if (now[q] > 1.1 * before[q])
                    bad += fmt(" %s %.3g->%.3g", names[q], before[q], now[q]);
        }
        sub(std::string("errors non-increasing as n_max doubles [") + (which ? "roundtrip" : "example") + "]", bad.empty(),
            bad.empty() ? "" : "increases:" + bad);
    }
    {
        const auto d = synthesize_nodal_data(fixtures::roundtrip_problem(), 20, 150);
        std::ostringstream a, b;
        InverseOptions one, many;
        one.threads = 1;
        many.threads = 3;
        write_reconstruction_csv(reconstruct(d, 65, one), a);
        write_reconstruction_csv(reconstruct(d, 65, many), b);
        sub("reconstruct deterministic", a.str() == b.str(), "");
    }
    detail("CLI determinism and failure categories are exercised by test_cli");
    if (v.pass) v.text = "all invariants hold";
    else v.text = "failing: " + v.text;
    return v;
}

struct Criterion {
    const char* title;
    std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {"worked-example reconstruction from synthetic data", criterion_1},
        {"free-operator exactness", criterion_2},
        {"constant-mass integrator oracle", criterion_3},
        {"eigenvalue asymptotics", criterion_4},
        {"nodal asymptotics", criterion_5},
        {"numeric round trip", criterion_6},
        {"solution expansion remainder", criterion_7},
        {"invariant suite", criterion_8},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "criterion must be in 1..%zu\n", all.size());
        return 2;
    }
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = all[i].run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.text = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %s: %s (%s) [%.1fs]\n", i + 1, v.pass ? "PASS" : "FAIL", all[i].title,
                    v.text.c_str(), secs);
        std::fflush(stdout);
        ok = ok && v.pass;
    }
    return ok ? 0 : 1;
}
