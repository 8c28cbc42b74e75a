// Command-line front end. Talks to the solver only through the C API.

#include "dnodal/dnodal.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr double pi = std::numbers::pi;

enum Exit : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_parse = 3,
    exit_numeric = 4,
    exit_fixture = 5,
    exit_io = 6,
    exit_invalid_problem = 7,
};

struct Failure {
    dn_status status;
    std::string message;
};

int exit_code(dn_status s) {
    switch (s) {
    case DN_OK: return exit_ok;
    case DN_ERR_CONFIG: return exit_config;
    case DN_ERR_PARSE: return exit_parse;
    case DN_ERR_NUMERIC: return exit_numeric;
    case DN_ERR_IO: return exit_io;
    case DN_ERR_INVALID_PROBLEM: return exit_invalid_problem;
    case DN_ERR_INTERNAL: return exit_internal;
    }
    return exit_internal;
}

void check(dn_status s) {
    if (s != DN_OK) throw Failure{s, dn_last_error()};
}

[[noreturn]] void config_error(const std::string& msg) { throw Failure{DN_ERR_CONFIG, msg}; }

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Problem = std::unique_ptr<dn_problem, Deleter<dn_problem, dn_problem_free>>;
using Spectrum = std::unique_ptr<dn_spectrum, Deleter<dn_spectrum, dn_spectrum_free>>;
using Nodal = std::unique_ptr<dn_nodal_data, Deleter<dn_nodal_data, dn_nodal_free>>;
using Recon = std::unique_ptr<dn_reconstruction, Deleter<dn_reconstruction, dn_reconstruction_free>>;
using Traj = std::unique_ptr<dn_trajectory, Deleter<dn_trajectory, dn_trajectory_free>>;

struct RunConfig {
    std::string command;
    std::string problem_path;
    std::string fixture;
    std::string nodes_path;
    int n_min = 5;
    int n_max = 40;
    int grid_points = 65;
    double tol = 1e-10;
    double lambda_h = 0.0;  // 0 = library default
    std::string mode = "numeric";
    std::optional<double> known_m;
    std::optional<double> max_error;
    std::string output_dir = ".";
    std::vector<double> lambdas;
    bool allow_large = false;
    bool nearest = false;
    unsigned threads = 0;
};

std::string out_path(const RunConfig& c, const std::string& name) {
    return (std::filesystem::path(c.output_dir) / name).string();
}

void ensure_output_dir(const RunConfig& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec) throw Failure{DN_ERR_IO, "cannot create output directory '" + c.output_dir + "': " + ec.message()};
}

void validate(const RunConfig& c) {
    if (c.n_min < 5) config_error("--n-min must be >= 5");
    if (c.n_max < c.n_min) config_error("--n-max must be >= --n-min");
    if (!(c.tol > 0)) config_error("--tol must be positive");
    if (c.grid_points < 16) config_error("--grid-points must be >= 16");
    if (c.lambda_h < 0) config_error("--lambda-h must be positive");
    if (c.mode != "numeric" && c.mode != "synthetic") config_error("--mode must be numeric or synthetic");
    if (c.known_m && !(*c.known_m >= 0)) config_error("--known-m must be >= 0");
}

Problem load_problem(const RunConfig& c) {
    dn_problem* p = nullptr;
    if (!c.problem_path.empty() && !c.fixture.empty()) config_error("give either --problem or --fixture, not both");
    if (!c.problem_path.empty()) {
        check(dn_problem_load(c.problem_path.c_str(), &p));
    } else if (c.fixture == "example") {
        check(dn_problem_worked_example(0.3, -0.2, &p));
    } else if (c.fixture == "free") {
        check(dn_problem_free_operator(0.0, 0.0, &p));
    } else if (c.fixture == "roundtrip") {
        check(dn_problem_roundtrip_fixture(&p));
    } else if (c.fixture.empty()) {
        config_error("--problem is required");
    } else {
        config_error("unknown fixture '" + c.fixture + "' (example, free, roundtrip)");
    }
    return Problem(p);
}

dn_spectrum_options spectrum_options(const RunConfig& c) {
    dn_spectrum_options o;
    dn_spectrum_options_default(&o);
    o.tol = c.tol;
    if (c.lambda_h > 0) o.max_lambda_h = c.lambda_h;
    o.threads = c.threads;
    return o;
}

dn_inverse_options inverse_options(const RunConfig& c) {
    dn_inverse_options o;
    dn_inverse_options_default(&o);
    if (c.known_m) {
        o.has_known_m = 1;
        o.known_m = *c.known_m;
    }
    o.nearest_node = c.nearest ? 1 : 0;
    o.threads = c.threads;
    return o;
}

void report_failures(const dn_spectrum* s, const dn_nodal_data* d) {
    const auto print = [](int n, const char* msg) { std::cerr << "warning: n=" << n << " " << msg << '\n'; };
    if (d) {
        for (size_t i = 0; i < dn_nodal_failure_count(d); ++i) {
            int n = 0;
            const char* msg = nullptr;
            check(dn_nodal_failure(d, i, &n, &msg));
            print(n, msg);
        }
    } else if (s) {
        for (size_t i = 0; i < dn_spectrum_failure_count(s); ++i) {
            int n = 0;
            const char* msg = nullptr;
            check(dn_spectrum_failure(s, i, &n, &msg));
            print(n, msg);
        }
    }
}

nlohmann::ordered_json summary_json(const dn_reconstruction* r) {
    dn_reconstruction_summary s;
    check(dn_reconstruction_summary_get(r, &s));
    nlohmann::ordered_json j;
    j["theta_hat"] = s.theta_hat;
    j["beta_hat"] = s.beta_hat;
    j["m_hat"] = s.m_hat;
    j["m_mode"] = s.m_known ? "known" : (s.m_degenerate ? "degenerate" : "recovered");
    j["radicand"] = s.radicand;
    j["offset"] = s.offset;
    j["grid_points"] = dn_reconstruction_size(r);
    j["stage1"] = {{"max_dispersion", s.f_dispersion}, {"max_tail_gap", s.f_tail_gap}, {"fitted_points", s.f_valid_points}};
    j["stage2"] = {{"max_dispersion", s.g_dispersion}, {"max_tail_gap", s.g_tail_gap}, {"fitted_points", s.g_valid_points}};
    j["v_integral"] = s.v_integral;
    return j;
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{DN_ERR_IO, "cannot open '" + path + "' for writing"};
    out << j.dump(2) << '\n';
    if (!out) throw Failure{DN_ERR_IO, "write to '" + path + "' failed"};
}

Recon run_reconstruction(const RunConfig& c, const dn_nodal_data* d) {
    const auto opts = inverse_options(c);
    dn_reconstruction* r = nullptr;
    check(dn_reconstruct(d, c.grid_points, &opts, &r));
    Recon rec(r);
    check(dn_reconstruction_write_csv(rec.get(), out_path(c, "reconstruction.csv").c_str()));
    return rec;
}

Nodal generate_nodes(const RunConfig& c, const dn_problem* p, bool report) {
    dn_nodal_data* d = nullptr;
    if (c.mode == "synthetic") {
        check(dn_nodal_synthesize(p, c.n_min, c.n_max, &d));
        return Nodal(d);
    }
    const auto opts = spectrum_options(c);
    dn_spectrum* s = nullptr;
    check(dn_nodal_compute(p, c.n_min, c.n_max, &opts, &d, &s));
    Nodal nodes(d);
    Spectrum spec(s);
    check(dn_spectrum_write_csv(spec.get(), out_path(c, "spectrum.csv").c_str()));
    if (report) report_failures(nullptr, nodes.get());
    return nodes;
}

/// Partial results are written first; the run still counts as a failure.
void fail_if_partial(size_t failures, const RunConfig& c) {
    if (failures == 0) return;
    throw Failure{DN_ERR_NUMERIC, std::to_string(failures) + " of " + std::to_string(c.n_max - c.n_min + 1) +
                                      " indices failed (see warnings); partial results were written"};
}

struct Errors {
    double theta, beta, m, V_sup, Lprime_sup;
};

/// Errors of a reconstruction against the generating problem; sup norms over
/// the interior grid.
Errors compare(const dn_problem* p, const dn_reconstruction* r) {
    dn_boundary bc;
    double m = 0;
    check(dn_problem_boundary(p, &bc));
    check(dn_problem_mass(p, &m));
    dn_reconstruction_summary s;
    check(dn_reconstruction_summary_get(r, &s));
    Errors e{std::abs(s.theta_hat - bc.theta), std::abs(s.beta_hat - bc.beta), std::abs(s.m_hat - m), 0, 0};
    const size_t size = dn_reconstruction_size(r);
    for (size_t i = 1; i + 1 < size; ++i) {
        double x, V, Lp, V0, Lp0;
        check(dn_reconstruction_sample(r, i, &x, nullptr, nullptr, &V, &Lp));
        check(dn_problem_potential(p, x, &V0));
        check(dn_problem_lprime(p, x, &Lp0));
        e.V_sup = std::max(e.V_sup, std::abs(V - V0));
        e.Lprime_sup = std::max(e.Lprime_sup, std::abs(Lp - Lp0));
    }
    return e;
}

int cmd_forward(const RunConfig& c) {
    if (c.lambdas.empty()) config_error("forward needs at least one --lambda");
    auto p = load_problem(c);
    ensure_output_dir(c);
    const double lh = c.lambda_h > 0 ? c.lambda_h : dn_default_max_lambda_h();
    std::ofstream index(out_path(c, "trajectories.csv"), std::ios::binary);
    if (!index) throw Failure{DN_ERR_IO, "cannot write trajectories.csv"};
    index << "index,lambda,intervals,file\n";
    for (size_t k = 0; k < c.lambdas.size(); ++k) {
        int intervals = 0;
        check(dn_required_intervals(c.lambdas[k], lh, &intervals));
        intervals = std::max(intervals, 64);
        dn_trajectory* t = nullptr;
        check(dn_trajectory_compute(p.get(), c.lambdas[k], intervals, 0.0, &t));
        Traj traj(t);
        const std::string file = "trajectory_" + std::to_string(k) + ".csv";
        check(dn_trajectory_write_csv(traj.get(), out_path(c, file).c_str()));
        nlohmann::json lam = c.lambdas[k];
        index << k << ',' << lam.dump() << ',' << intervals << ',' << file << '\n';
    }
    return exit_ok;
}

int cmd_spectrum(const RunConfig& c) {
    auto p = load_problem(c);
    ensure_output_dir(c);
    const auto opts = spectrum_options(c);
    dn_spectrum* s = nullptr;
    check(dn_spectrum_compute(p.get(), c.n_min, c.n_max, &opts, &s));
    Spectrum spec(s);
    check(dn_spectrum_write_csv(spec.get(), out_path(c, "spectrum.csv").c_str()));
    report_failures(spec.get(), nullptr);
    fail_if_partial(dn_spectrum_failure_count(spec.get()), c);
    return exit_ok;
}

int cmd_nodes(const RunConfig& c, bool synthetic) {
    RunConfig cc = c;
    cc.mode = synthetic ? "synthetic" : "numeric";
    auto p = load_problem(cc);
    ensure_output_dir(cc);
    auto nodes = generate_nodes(cc, p.get(), true);
    check(dn_nodal_write_csv(nodes.get(), out_path(cc, "nodes.csv").c_str()));
    fail_if_partial(dn_nodal_failure_count(nodes.get()), cc);
    return exit_ok;
}

int cmd_reconstruct(const RunConfig& c) {
    if (c.nodes_path.empty()) config_error("reconstruct needs --nodes");
    dn_nodal_data* d = nullptr;
    check(dn_nodal_read_csv(c.nodes_path.c_str(), &d));
    Nodal nodes(d);
    ensure_output_dir(c);
    auto rec = run_reconstruction(c, nodes.get());
    write_json(summary_json(rec.get()), out_path(c, "summary.json"));
    return exit_ok;
}

int cmd_roundtrip(const RunConfig& c) {
    const int limit = c.mode == "numeric" ? 120 : 1000;
    if (c.n_max > limit && !c.allow_large)
        config_error("--n-max " + std::to_string(c.n_max) + " exceeds the " + c.mode + " limit " +
                     std::to_string(limit) + "; pass --allow-large to override");
    auto p = load_problem(c);
    ensure_output_dir(c);
    auto nodes = generate_nodes(c, p.get(), true);
    check(dn_nodal_write_csv(nodes.get(), out_path(c, "nodes.csv").c_str()));
    auto rec = run_reconstruction(c, nodes.get());
    const auto e = compare(p.get(), rec.get());
    auto j = summary_json(rec.get());
    j["mode"] = c.mode;
    j["errors"] = {{"theta", e.theta}, {"beta", e.beta}, {"m", e.m}, {"V_sup", e.V_sup}, {"Lprime_sup", e.Lprime_sup}};
    write_json(j, out_path(c, "summary.json"));
    std::cout << "theta_error " << e.theta << "\nbeta_error " << e.beta << "\nm_error " << e.m << "\nV_sup_error "
              << e.V_sup << "\nLprime_sup_error " << e.Lprime_sup << '\n';
    if (c.max_error) {
        const double worst = std::max({e.theta, e.beta, e.m, e.V_sup, e.Lprime_sup});
        if (worst > *c.max_error) {
            std::cerr << "error: category=numeric message=reconstruction error " << worst << " exceeds --max-error "
                      << *c.max_error << '\n';
            return exit_numeric;
        }
    }
    return exit_ok;
}

int cmd_worked_example(RunConfig c, bool n_min_set, bool n_max_set) {
    if (!n_min_set) c.n_min = 50;
    if (!n_max_set) c.n_max = 400;
    const double b1 = 0.3, b2 = -0.2;
    dn_problem* raw = nullptr;
    check(dn_problem_worked_example(b1, b2, &raw));
    Problem p(raw);
    ensure_output_dir(c);
    c.mode = "synthetic";
    auto nodes = generate_nodes(c, p.get(), true);
    check(dn_nodal_write_csv(nodes.get(), out_path(c, "nodes.csv").c_str()));
    auto rec = run_reconstruction(c, nodes.get());
    dn_reconstruction_summary s;
    check(dn_reconstruction_summary_get(rec.get(), &s));
    const auto e = compare(p.get(), rec.get());

    const size_t size = dn_reconstruction_size(rec.get());
    double f_mid = 0, g0 = 0, gpi = 0, x = 0;
    check(dn_reconstruction_sample(rec.get(), 0, nullptr, nullptr, &g0, nullptr, nullptr));
    check(dn_reconstruction_sample(rec.get(), size - 1, nullptr, nullptr, &gpi, nullptr, nullptr));
    if (size % 2 == 1) check(dn_reconstruction_sample(rec.get(), size / 2, &x, &f_mid, nullptr, nullptr, nullptr));

    struct Line {
        const char* name;
        double got, want, tol;
    };
    std::vector<Line> lines = {
        {"theta_hat", s.theta_hat, pi / 4, 1e-3},
        {"beta_hat", s.beta_hat, pi / 4, 1e-3},
        {"m_hat", s.m_hat, 1.0, 1e-2},
        {"V_sup_error", e.V_sup, 0.0, 1e-2},
        {"Lprime_sup_error", e.Lprime_sup, 0.0, 5e-2},
        {"g(0)", g0, std::sqrt(0.5) * (b1 - b2) + 0.5, 1e-2},
        {"g(pi)-g(0)", gpi - g0, pi / 2, 2e-2},
    };
    if (size % 2 == 1) lines.push_back({"f(pi/2)", f_mid, -pi * pi / 16 - pi / 4, 1e-3});
    bool ok = true;
    for (const auto& l : lines) {
        const double err = std::abs(l.got - l.want);
        const bool pass = err <= l.tol;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << l.name << " value=" << l.got << " expected=" << l.want
                  << " error=" << err << " tol=" << l.tol << '\n';
    }
    auto j = summary_json(rec.get());
    j["errors"] = {{"theta", e.theta}, {"beta", e.beta}, {"m", e.m}, {"V_sup", e.V_sup}, {"Lprime_sup", e.Lprime_sup}};
    write_json(j, out_path(c, "summary.json"));
    return ok ? exit_ok : exit_fixture;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forward and inverse nodal solver for Dirac-type integro-differential operators"};
    app.require_subcommand(1);
    RunConfig c;

    const auto common = [&](CLI::App* sub, bool problem, bool ranges) {
        if (problem) {
            sub->add_option("--problem", c.problem_path, "Problem definition file (JSON)");
            sub->add_option("--fixture", c.fixture, "Built-in problem: example, free, roundtrip");
        }
        if (ranges) {
            sub->add_option("--n-min", c.n_min, "Smallest eigenvalue index (>= 5)");
            sub->add_option("--n-max", c.n_max, "Largest eigenvalue index");
            sub->add_option("--tol", c.tol, "Eigenvalue tolerance");
            sub->add_option("--lambda-h", c.lambda_h, "Grid resolution bound |lambda| h");
            sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
        }
        sub->add_option("--out", c.output_dir, "Output directory");
    };
    const auto inverse = [&](CLI::App* sub) {
        sub->add_option("--grid-points", c.grid_points, "Reconstruction grid size (>= 16)");
        sub->add_option("--known-m", c.known_m, "Use this mass instead of recovering it");
        sub->add_flag("--nearest-node", c.nearest, "Use the nearest node instead of interpolating");
    };

    auto* forward = app.add_subcommand("forward", "Integrate the initial-value problem for given lambda values");
    common(forward, true, false);
    forward->add_option("--lambda", c.lambdas, "Spectral parameter (repeatable)")->required();
    forward->add_option("--lambda-h", c.lambda_h, "Grid resolution bound |lambda| h");

    auto* spectrum = app.add_subcommand("spectrum", "Compute eigenvalues");
    common(spectrum, true, true);

    auto* nodes = app.add_subcommand("nodes", "Compute eigenvalues and nodal points");
    common(nodes, true, true);

    auto* synth = app.add_subcommand("synth-nodes", "Generate nodal data from the asymptotic formula");
    common(synth, true, true);

    auto* recon = app.add_subcommand("reconstruct", "Reconstruct the problem from nodal data");
    common(recon, false, false);
    recon->add_option("--nodes", c.nodes_path, "Nodal data CSV")->required();
    inverse(recon);

    auto* roundtrip = app.add_subcommand("roundtrip", "Generate nodal data, reconstruct and report errors");
    common(roundtrip, true, true);
    inverse(roundtrip);
    roundtrip->add_option("--mode", c.mode, "numeric or synthetic");
    roundtrip->add_option("--max-error", c.max_error, "Fail when any reconstruction error exceeds this");
    roundtrip->add_flag("--allow-large", c.allow_large, "Lift the n-max limit");

    auto* example_cmd = app.add_subcommand("paper-example", "Run the built-in worked example and check its values");
    example_cmd->add_option("--out", c.output_dir, "Output directory");
    auto* example_nmin = example_cmd->add_option("--n-min", c.n_min, "Smallest index (default 50)");
    auto* example_nmax = example_cmd->add_option("--n-max", c.n_max, "Largest index (default 400)");
    inverse(example_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: category=config message=" << e.what() << '\n';
        return exit_config;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        if (c.command == "paper-example") {
            RunConfig check_cfg = c;
            if (!example_nmin->count()) check_cfg.n_min = 50;
            if (!example_nmax->count()) check_cfg.n_max = 400;
            validate(check_cfg);
            return cmd_worked_example(c, example_nmin->count() > 0, example_nmax->count() > 0);
        }
        validate(c);
        if (c.command == "forward") return cmd_forward(c);
        if (c.command == "spectrum") return cmd_spectrum(c);
        if (c.command == "nodes") return cmd_nodes(c, false);
        if (c.command == "synth-nodes") return cmd_nodes(c, true);
        if (c.command == "reconstruct") return cmd_reconstruct(c);
        if (c.command == "roundtrip") return cmd_roundtrip(c);
        config_error("unknown command " + c.command);
    } catch (const Failure& f) {
        std::cerr << "error: category=" << dn_status_category(f.status) << " message=" << f.message << '\n';
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: category=internal message=" << e.what() << '\n';
        return exit_internal;
    }
}
