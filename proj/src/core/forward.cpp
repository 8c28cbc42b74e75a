#include "core/forward.hpp"

#include "core/csv.hpp"
#include "core/error.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace dnodal {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double overflow_limit = 1e280;

}  // namespace

int required_intervals(double lambda, double max_lambda_h) {
    if (!(max_lambda_h > 0)) throw ConfigError("max lambda*h must be positive");
    return std::max(1, static_cast<int>(std::ceil(std::abs(lambda) * pi / max_lambda_h - 1e-9)));
}

IvpSolver::IvpSolver(ProblemDefinition problem, int intervals, ForwardOptions options)
    : problem_(std::move(problem)), intervals_(intervals), options_(options) {
    if (intervals_ < 1) throw ConfigError("intervals must be >= 1");
    h_ = pi / intervals_;
    const auto& co = problem_.coeffs();
    for (int e = 0; e < 4; ++e) {
        const auto& entry = co.chi[static_cast<std::size_t>(e)];
        if (entry.kind() == KernelEntry::Kind::separable) {
            for (const auto& t : entry.terms()) terms_.push_back({e / 2, e % 2, &t});
        } else if (entry.kind() == KernelEntry::Kind::general) {
            general_.push_back({e / 2, e % 2, &entry});
        }
    }
    const std::size_t samples = 2 * static_cast<std::size_t>(intervals_) + 1;
    v_half_.resize(samples);
    a_half_.assign(terms_.size(), std::vector<double>(samples));
    b_half_.assign(terms_.size(), std::vector<double>(samples));
    w_half_.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = k + 1 == samples ? pi : 0.5 * h_ * static_cast<double>(k);
        v_half_[k] = co.V(x);
        for (std::size_t q = 0; q < terms_.size(); ++q) {
            a_half_[q][k] = terms_[q].fn->a(x);
            b_half_[q][k] = terms_[q].fn->b(x);
        }
        for (int e = 0; e < 4; ++e) w_half_[k][static_cast<std::size_t>(e)] = co.chi[static_cast<std::size_t>(e)](x, x);
    }
}

IvpSolver::Stage IvpSolver::prepare(std::size_t i, double dx, long half_index, const double* y1,
                                    const double* y2, const double* memory) const {
    const auto& co = problem_.coeffs();
    const double ti = static_cast<double>(i) * h_;
    const double x = ti + dx;
    Stage s{};
    s.half_dx = 0.5 * dx;
    const bool tabled = half_index >= 0;
    const auto hk = static_cast<std::size_t>(half_index);
    s.V = tabled ? v_half_[hk] : co.V(x);
    if (tabled) {
        const auto& w = w_half_[hk];
        s.W11 = w[0];
        s.W12 = w[1];
        s.W21 = w[2];
        s.W22 = w[3];
    } else {
        s.W11 = co.chi[0](x, x);
        s.W12 = co.chi[1](x, x);
        s.W21 = co.chi[2](x, x);
        s.W22 = co.chi[3](x, x);
    }
    double H[2] = {0.0, 0.0};
    for (std::size_t q = 0; q < terms_.size(); ++q) {
        const auto& term = terms_[q];
        const double a = tabled ? a_half_[q][hk] : term.fn->a(x);
        const double yk = term.col == 0 ? y1[i] : y2[i];
        H[term.row] += a * (memory[q] + s.half_dx * b_half_[q][2 * i] * yk);
    }
    for (const auto& g : general_) {
        const double* yk = g.col == 0 ? y1 : y2;
        const auto& chi = *g.entry;
        double sum = 0.0;
        if (i > 0) {
            sum = 0.5 * (chi(x, 0.0) * yk[0] + chi(x, ti) * yk[i]);
            for (std::size_t m = 1; m < i; ++m) sum += chi(x, static_cast<double>(m) * h_) * yk[m];
            sum *= h_;
        }
        H[g.row] += sum + s.half_dx * chi(x, ti) * yk[i];
    }
    s.H1 = H[0];
    s.H2 = H[1];
    return s;
}

std::array<double, 2> IvpSolver::rhs(const Stage& s, double lambda, double m, double y1, double y2) {
    const double M1 = s.H1 + s.half_dx * (s.W11 * y1 + s.W12 * y2);
    const double M2 = s.H2 + s.half_dx * (s.W21 * y1 + s.W22 * y2);
    return {(s.V - m - lambda) * y2 + M2, (lambda - s.V - m) * y1 - M1};
}

void IvpSolver::integrate(double lambda, Trajectory& traj, std::vector<double>* memory_out) const {
    if (!std::isfinite(lambda)) throw ConfigError("lambda must be finite");
    if (std::abs(lambda) * h_ > options_.guard) {
        const int need = required_intervals(lambda, options_.guard);
        throw ResolutionError("|lambda| h = " + std::to_string(std::abs(lambda) * h_) +
                                  " exceeds the oscillation guard " + std::to_string(options_.guard) +
                                  "; at least " + std::to_string(need) + " intervals are required",
                              need);
    }
    const auto& bc = problem_.bc();
    const double m = problem_.coeffs().m;
    const auto N = static_cast<std::size_t>(intervals_);
    const std::size_t T = terms_.size();

    traj.lambda = lambda;
    traj.step = h_;
    traj.grid.resize(N + 1);
    traj.phi1.assign(N + 1, 0.0);
    traj.phi2.assign(N + 1, 0.0);
    for (std::size_t i = 0; i <= N; ++i) traj.grid[i] = i == N ? pi : static_cast<double>(i) * h_;
    double* y1 = traj.phi1.data();
    double* y2 = traj.phi2.data();
    y1[0] = lambda * std::sin(bc.theta) + bc.b2;
    y2[0] = -(lambda * std::cos(bc.theta) + bc.b1);

    std::vector<double> local(T, 0.0);
    if (memory_out) memory_out->assign((N + 1) * T, 0.0);
    double* mem = memory_out ? memory_out->data() : local.data();

    for (std::size_t i = 0; i < N; ++i) {
        const Stage s0 = prepare(i, 0.0, static_cast<long>(2 * i), y1, y2, mem);
        const Stage s1 = prepare(i, 0.5 * h_, static_cast<long>(2 * i + 1), y1, y2, mem);
        const Stage s2 = prepare(i, h_, static_cast<long>(2 * i + 2), y1, y2, mem);
        const double u = y1[i];
        const double v = y2[i];
        const auto k1 = rhs(s0, lambda, m, u, v);
        const auto k2 = rhs(s1, lambda, m, u + 0.5 * h_ * k1[0], v + 0.5 * h_ * k1[1]);
        const auto k3 = rhs(s1, lambda, m, u + 0.5 * h_ * k2[0], v + 0.5 * h_ * k2[1]);
        const auto k4 = rhs(s2, lambda, m, u + h_ * k3[0], v + h_ * k3[1]);
        y1[i + 1] = u + h_ / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y2[i + 1] = v + h_ / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        if (!(std::abs(y1[i + 1]) < overflow_limit && std::abs(y2[i + 1]) < overflow_limit))
            throw MagnitudeError("solution overflow at x = " + std::to_string(traj.grid[i + 1]) +
                                 "; rescale the problem (Delta is normalized by lambda^2)");

        double* next = memory_out ? mem + T : mem;
        for (std::size_t q = 0; q < T; ++q) {
            const auto& term = terms_[q];
            const double ya = term.col == 0 ? y1[i] : y2[i];
            const double yb = term.col == 0 ? y1[i + 1] : y2[i + 1];
            next[q] = mem[q] + 0.5 * h_ * (b_half_[q][2 * i] * ya + b_half_[q][2 * i + 2] * yb);
        }
        if (memory_out) mem = next;
    }
}

Trajectory IvpSolver::solve(double lambda) const {
    Trajectory t;
    integrate(lambda, t, nullptr);
    return t;
}

IvpSolver::Profile IvpSolver::profile(double lambda) const {
    Profile p;
    integrate(lambda, p.trajectory, &p.memory);
    return p;
}

CharacteristicValue IvpSolver::characteristic(double lambda) const {
    const auto t = solve(lambda);
    const auto& bc = problem_.bc();
    CharacteristicValue c;
    c.value = t.phi1.back() * (lambda * std::cos(bc.beta) + bc.d1) +
              t.phi2.back() * (lambda * std::sin(bc.beta) + bc.d2);
    c.normalized = c.value / std::max(1.0, lambda * lambda);
    return c;
}

std::array<double, 2> IvpSolver::evaluate(const Profile& p, double x) const {
    const auto& traj = p.trajectory;
    const auto N = static_cast<std::size_t>(intervals_);
    if (!(x >= 0.0 && x <= pi)) throw ConfigError("evaluate: x outside [0, pi]");
    auto i = static_cast<std::size_t>(std::floor(x / h_));
    if (i >= N) i = N - 1;
    const double delta = x - static_cast<double>(i) * h_;
    if (delta <= 0.0) return {traj.phi1[i], traj.phi2[i]};

    const double lambda = traj.lambda;
    const double m = problem_.coeffs().m;
    const double* y1 = traj.phi1.data();
    const double* y2 = traj.phi2.data();
    const double* mem = p.memory.data() + i * terms_.size();
    const Stage s0 = prepare(i, 0.0, static_cast<long>(2 * i), y1, y2, mem);
    const Stage s1 = prepare(i, 0.5 * delta, -1, y1, y2, mem);
    const Stage s2 = prepare(i, delta, -1, y1, y2, mem);
    const double u = y1[i];
    const double v = y2[i];
    const auto k1 = rhs(s0, lambda, m, u, v);
    const auto k2 = rhs(s1, lambda, m, u + 0.5 * delta * k1[0], v + 0.5 * delta * k1[1]);
    const auto k3 = rhs(s1, lambda, m, u + 0.5 * delta * k2[0], v + 0.5 * delta * k2[1]);
    const auto k4 = rhs(s2, lambda, m, u + delta * k3[0], v + delta * k3[1]);
    return {u + delta / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            v + delta / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

Trajectory integrate_ivp(const ProblemDefinition& problem, double lambda, int intervals,
                         const ForwardOptions& options) {
    return IvpSolver(problem, intervals, options).solve(lambda);
}

CharacteristicValue char_fn(const ProblemDefinition& problem, double lambda, int intervals,
                            const ForwardOptions& options) {
    return IvpSolver(problem, intervals, options).characteristic(lambda);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "x,phi1,phi2\n";
    for (std::size_t i = 0; i < traj.grid.size(); ++i)
        out << csv::number(traj.grid[i]) << ',' << csv::number(traj.phi1[i]) << ','
            << csv::number(traj.phi2[i]) << '\n';
}

}  // namespace dnodal
