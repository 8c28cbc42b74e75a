#include "core/inverse.hpp"

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>

namespace dnodal {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double max_spacing_ratio = 1.5;

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double hi = *mid;
    return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

/// Per-list evaluation at x of a per-node quantity q -> value(q, j).
/// Returns nothing when x lies outside the list's node hull or the stencil
/// straddles a gap (a missing node).
template <class PerNode>
std::optional<double> list_value(const std::vector<double>& xs, double x, NodeSelection sel, PerNode&& value) {
    if (xs.empty() || x < xs.front() || x > xs.back()) return std::nullopt;
    const auto size = xs.size();
    if (sel == NodeSelection::nearest) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        auto q = static_cast<std::size_t>(it - xs.begin());
        if (q == size || (q > 0 && x - xs[q - 1] < xs[q] - x)) --q;
        return value(q);
    }
    if (size < 4) return std::nullopt;
    auto k = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    k = k == 0 ? 0 : k - 1;
    const std::size_t first = std::min(k > 0 ? k - 1 : 0, size - 4);
    double lo = xs[first + 1] - xs[first], hi = lo;
    for (std::size_t i = first + 1; i < first + 3; ++i) {
        lo = std::min(lo, xs[i + 1] - xs[i]);
        hi = std::max(hi, xs[i + 1] - xs[i]);
    }
    if (!(hi <= max_spacing_ratio * lo)) return std::nullopt;
    std::array<double, 4> px{}, py{};
    for (std::size_t i = 0; i < 4; ++i) {
        px[i] = xs[first + i];
        py[i] = value(first + i);
    }
    return numerics::interpolate_lagrange(px, py, x);
}

/// f-type value of one list at x with origin shift `shift`.
std::optional<double> f_value(const std::vector<double>& xs, int n, double x, int origin, NodeSelection sel) {
    return list_value(xs, x, sel, [&](std::size_t q) {
        const double j = static_cast<double>(q) + origin;
        return n * xs[q] - j * pi;
    });
}

/// Whole-list index correction that brings the f-value within pi/2 of ref.
/// A list with a missing node has its later positions off by one; this
/// realigns them per sample.
int branch_shift(double value, double ref) { return static_cast<int>(std::lround((value - ref) / pi)); }

LimitFit fit_limit(double x, std::vector<std::pair<int, double>> samples, std::size_t terms, int min_samples) {
    if (samples.size() < static_cast<std::size_t>(std::max(min_samples, static_cast<int>(terms) + 1)))
        throw InsufficientData("only " + std::to_string(samples.size()) + " usable n at x = " + csv::number(x) +
                               " (need " + std::to_string(std::max<std::size_t>(min_samples, terms + 1)) + ")");
    std::sort(samples.begin(), samples.end());
    const std::size_t rows = samples.size();
    std::vector<double> A(rows * terms), y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double inv = 1.0 / samples[i].first;
        double p = 1.0;
        for (std::size_t c = 0; c < terms; ++c) {
            A[i * terms + c] = p;
            p *= inv;
        }
        y[i] = samples[i].second;
    }
    LimitFit fit;
    fit.x = x;
    fit.model = numerics::least_squares(A, rows, terms, y, &fit.dispersion);
    fit.a0 = fit.model[0];
    fit.tail = samples.back().second;
    fit.tail_gap = std::abs(fit.tail - fit.a0);
    fit.samples = std::move(samples);
    return fit;
}

void check_options(const InverseOptions& o) {
    if (o.window < 3 || o.window % 2 == 0) throw ConfigError("window must be odd and >= 3");
    if (o.min_samples < 3) throw ConfigError("min_samples must be >= 3");
    if (!(o.stage1_gate > 0)) throw ConfigError("stage1_gate must be positive");
    if (!(o.radicand_floor >= 0)) throw ConfigError("radicand_floor must be >= 0");
    if (o.known_m && !(std::isfinite(*o.known_m) && *o.known_m >= 0))
        throw ConfigError("known m must be a finite nonnegative number");
}

/// Replaces values at invalid grid points by the quadratic through the three
/// nearest valid points.
void fill_invalid(const std::vector<double>& x, std::vector<double>& y, const std::vector<char>& valid) {
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < valid.size(); ++i)
        if (valid[i]) good.push_back(i);
    if (good.size() < 3) throw ReconstructionError("fewer than three grid points have usable fits");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (valid[i]) continue;
        auto nearest = good;
        std::stable_sort(nearest.begin(), nearest.end(), [&](std::size_t a, std::size_t b) {
            const auto da = a > i ? a - i : i - a;
            const auto db = b > i ? b - i : i - b;
            return da < db;
        });
        std::array<double, 3> px{}, py{};
        for (std::size_t k = 0; k < 3; ++k) {
            px[k] = x[nearest[k]];
            py[k] = y[nearest[k]];
        }
        y[i] = numerics::interpolate_lagrange(px, py, x[i]);
    }
}

template <class FitAt>
StageDiagnostics run_stage(const SampledFunction& grid, std::vector<double>& out, std::vector<LimitFit>& fits,
                           unsigned threads, FitAt&& fit_at) {
    const std::size_t G = grid.x.size();
    std::vector<std::optional<LimitFit>> slot(G);
    parallel_for(
        G,
        [&](std::size_t k) {
            try {
                slot[k] = fit_at(grid.x[k]);
            } catch (const InsufficientData&) {
            }
        },
        threads);
    StageDiagnostics d;
    std::vector<char> valid(G, 0);
    out.assign(G, 0.0);
    d.min_samples_used = 0;
    for (std::size_t k = 0; k < G; ++k) {
        if (!slot[k]) continue;
        valid[k] = 1;
        out[k] = slot[k]->a0;
        ++d.valid_points;
        d.max_dispersion = std::max(d.max_dispersion, slot[k]->dispersion);
        d.max_tail_gap = std::max(d.max_tail_gap, slot[k]->tail_gap);
        const int used = static_cast<int>(slot[k]->samples.size());
        d.min_samples_used = d.min_samples_used == 0 ? used : std::min(d.min_samples_used, used);
        fits.push_back(std::move(*slot[k]));
    }
    fill_invalid(grid.x, out, valid);
    return d;
}

}  // namespace

double SampledFunction::operator()(double t) const {
    if (x.size() < 2) return y.empty() ? 0.0 : y.front();
    return numerics::interpolate_uniform(y, x.front(), x[1] - x[0], t);
}

SampledFunction uniform_samples(int grid_size) {
    if (grid_size < 2) throw ConfigError("grid size must be >= 2");
    SampledFunction s;
    s.x.resize(static_cast<std::size_t>(grid_size));
    for (int k = 0; k < grid_size; ++k) s.x[static_cast<std::size_t>(k)] = k + 1 == grid_size ? pi : k * pi / (grid_size - 1);
    s.y.assign(s.x.size(), 0.0);
    return s;
}

int calibrate_offset(const NodalData& data, double x) {
    std::map<int, int> votes;
    int voters = 0;
    for (const auto& [n, xs] : data.nodes) {
        if (xs.empty()) continue;
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        auto p = static_cast<std::size_t>(it - xs.begin());
        if (p == xs.size() || (p > 0 && x - xs[p - 1] < xs[p] - x)) --p;
        const double base = n * xs[p] - static_cast<double>(p) * pi;
        // base - s pi in [-pi/2, pi/2)
        const auto s = static_cast<int>(std::floor((base + pi / 2) / pi));
        if (s >= -2 && s <= 2) {
            ++votes[s];
            ++voters;
        }
    }
    if (voters == 0) throw CalibrationError("no node list is consistent with an index offset in [-2, 2]");
    int best = 0, best_votes = -1;
    for (int s : {0, 1, -1, 2, -2}) {
        const int v = votes.count(s) ? votes[s] : 0;
        if (v > best_votes) {
            best = s;
            best_votes = v;
        }
    }
    if (2 * best_votes <= voters)
        throw CalibrationError("no index offset wins a majority (" + std::to_string(best_votes) + " of " +
                               std::to_string(voters) + " lists for s = " + std::to_string(best) + ")");
    return best;
}

LimitFit f_estimate(const NodalData& data, double x, int offset, const InverseOptions& o) {
    std::vector<std::pair<int, double>> raw;
    for (const auto& [n, xs] : data.nodes)
        if (const auto v = f_value(xs, n, x, offset, o.selection)) raw.emplace_back(n, *v);
    if (!raw.empty()) {
        std::vector<double> values;
        for (const auto& s : raw) values.push_back(s.second);
        const double ref = median(values);
        for (auto& s : raw) s.second -= branch_shift(s.second, ref) * pi;
    }
    return fit_limit(x, std::move(raw), 3, o.min_samples);
}

LimitFit g_estimate(const NodalData& data, double x, int offset, double theta_hat, double beta_hat,
                    const SampledFunction& f_hat, const InverseOptions& o) {
    const double a = (beta_hat - theta_hat) / pi;
    const double f_ref = f_hat(x);
    std::vector<std::pair<int, double>> samples;
    for (const auto& [n, xs] : data.nodes) {
        const auto f0 = f_value(xs, n, x, offset, o.selection);
        if (!f0) continue;
        const int origin = offset + branch_shift(*f0, f_ref);
        const auto v = list_value(xs, x, o.selection, [&](std::size_t q) {
            const double j = static_cast<double>(q) + origin;
            const double xs_star = j * pi / n;
            const double nu = f_hat(xs_star) + xs_star * a + theta_hat;
            return static_cast<double>(n) * n * (xs[q] - xs_star) + j * (beta_hat - theta_hat) -
                   n * (nu - theta_hat);
        });
        if (v) samples.emplace_back(n, *v);
    }
    return fit_limit(x, std::move(samples), 2, o.min_samples);
}

SampledFunction differentiate(const SampledFunction& s, int window) {
    if (window < 3 || window % 2 == 0) throw ConfigError("differentiate: window must be odd and >= 3");
    const auto w = static_cast<std::size_t>(window);
    if (s.x.size() < w + 1)
        throw ConfigError("differentiate: need at least " + std::to_string(w + 1) + " samples, got " +
                          std::to_string(s.x.size()));
    SampledFunction d;
    d.x = s.x;
    d.y.resize(s.x.size());
    const std::size_t half = w / 2;
    std::vector<double> A(w * 3), y(w);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        const std::size_t start = std::min(i > half ? i - half : 0, s.x.size() - w);
        for (std::size_t k = 0; k < w; ++k) {
            const double dx = s.x[start + k] - s.x[i];
            A[k * 3] = 1.0;
            A[k * 3 + 1] = dx;
            A[k * 3 + 2] = dx * dx;
            y[k] = s.y[start + k];
        }
        d.y[i] = numerics::least_squares(A, w, 3, y)[1];
    }
    return d;
}

ReconstructionResult reconstruct(const NodalData& data, int grid_size, const InverseOptions& o) {
    check_options(o);
    if (grid_size < 16) throw ConfigError("grid size must be >= 16");
    data.check();
    int lists = 0;
    for (const auto& [n, xs] : data.nodes) lists += xs.empty() ? 0 : 1;
    if (lists < o.min_samples)
        throw InsufficientData("nodal data has " + std::to_string(lists) + " nonempty lists; at least " +
                               std::to_string(o.min_samples) + " are required");

    ReconstructionResult r;
    r.offset = calibrate_offset(data, 0.0);
    const auto grid = uniform_samples(grid_size);

    // Stage 1: f, theta, beta, V.
    r.f_hat = grid;
    r.f_stage = run_stage(grid, r.f_hat.y, r.f_fits, o.threads,
                          [&](double x) { return f_estimate(data, x, r.offset, o); });
    r.theta_hat = -r.f_hat.y.front();
    r.beta_hat = -r.f_hat.y.back();
    if (r.f_stage.max_dispersion > o.stage1_gate)
        throw ReconstructionError("stage-1 quality: f-fit dispersion " + csv::number(r.f_stage.max_dispersion) +
                                  " exceeds the gate " + csv::number(o.stage1_gate));
    const double a = (r.beta_hat - r.theta_hat) / pi;
    r.V_hat = differentiate(r.f_hat, o.window);
    for (auto& v : r.V_hat.y) v += a;
    r.v_integral = numerics::cumulative_trapezoid(r.V_hat.y, grid.x[1] - grid.x[0]).back();

    // Stage 2: g, m, L'.
    r.g_hat = grid;
    r.g_stage = run_stage(grid, r.g_hat.y, r.g_fits, o.threads, [&](double x) {
        return g_estimate(data, x, r.offset, r.theta_hat, r.beta_hat, r.f_hat, o);
    });
    r.radicand = 2 * (r.g_hat.y.back() - r.g_hat.y.front()) / pi;
    if (o.known_m) {
        r.m_known = true;
        r.m_hat = *o.known_m;
    } else if (std::abs(r.radicand) <= o.radicand_floor) {
        r.m_degenerate = true;
        r.m_hat = 0.0;
    } else if (r.radicand < 0) {
        throw ReconstructionError("negative radicand 2(g(pi) - g(0))/pi = " + csv::number(r.radicand) +
                                  "; mass recovery assumes L(pi) = 0 (supply a known mass to bypass)");
    } else {
        r.m_hat = std::sqrt(r.radicand);
    }
    const auto gp = differentiate(r.g_hat, o.window);
    r.Lprime_hat = grid;
    for (std::size_t k = 0; k < grid.x.size(); ++k)
        r.Lprime_hat.y[k] = -2 * gp.y[k] - 2 * r.V_hat.y[k] * a + r.m_hat * r.m_hat;
    return r;
}

void write_reconstruction_csv(const ReconstructionResult& r, std::ostream& out) {
    out << "x,f,g,V,Lprime\n";
    for (std::size_t k = 0; k < r.f_hat.x.size(); ++k)
        out << csv::number(r.f_hat.x[k]) << ',' << csv::number(r.f_hat.y[k]) << ',' << csv::number(r.g_hat.y[k])
            << ',' << csv::number(r.V_hat.y[k]) << ',' << csv::number(r.Lprime_hat.y[k]) << '\n';
}

}  // namespace dnodal
