#include "dnodal/dnodal.h"

#include "core/asymptotics.hpp"
#include "core/error.hpp"
#include "core/fixtures.hpp"
#include "core/forward.hpp"
#include "core/inverse.hpp"
#include "core/problem_io.hpp"
#include "core/spectrum.hpp"

#include <fstream>
#include <new>
#include <string>
#include <utility>
#include <vector>

struct dn_problem {
    dnodal::ProblemDefinition def;
};
struct dn_trajectory {
    dnodal::Trajectory traj;
};
struct dn_spectrum {
    std::vector<dnodal::EigenResult> entries;
    std::vector<std::pair<int, std::string>> failures;
};
struct dn_nodal_data {
    dnodal::NodalData data;
    std::vector<std::pair<int, const std::vector<double>*>> lists;
    std::vector<std::pair<int, std::string>> failures;

    void index() {
        lists.clear();
        for (const auto& [n, xs] : data.nodes) lists.emplace_back(n, &xs);
    }
};
struct dn_reconstruction {
    dnodal::ReconstructionResult result;
};

namespace {

thread_local std::string last_error;

dn_status to_status(dnodal::ErrorCategory c) {
    using dnodal::ErrorCategory;
    switch (c) {
    case ErrorCategory::config: return DN_ERR_CONFIG;
    case ErrorCategory::parse: return DN_ERR_PARSE;
    case ErrorCategory::invalid_problem: return DN_ERR_INVALID_PROBLEM;
    case ErrorCategory::numeric: return DN_ERR_NUMERIC;
    case ErrorCategory::io: return DN_ERR_IO;
    }
    return DN_ERR_INTERNAL;
}

dn_status fail(dn_status s, std::string msg) {
    last_error = std::move(msg);
    return s;
}

template <class Fn>
dn_status guarded(Fn&& fn) {
    try {
        fn();
        return DN_OK;
    } catch (const dnodal::Error& e) {
        return fail(to_status(e.category()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(DN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DN_ERR_INTERNAL, "unknown error");
    }
}

#define DN_REQUIRE(cond, what)                                   \
    do {                                                         \
        if (!(cond)) return fail(DN_ERR_CONFIG, (what));         \
    } while (0)

std::ofstream open_out(const char* path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dnodal::IoError(std::string("cannot open '") + path + "' for writing");
    return out;
}

void close_out(std::ofstream& out, const char* path) {
    out.flush();
    if (!out) throw dnodal::IoError(std::string("write to '") + path + "' failed");
}

dnodal::SpectrumOptions spectrum_options(const dn_spectrum_options* o) {
    dnodal::SpectrumOptions s;
    if (!o) return s;
    s.tol = o->tol;
    s.max_lambda_h = o->max_lambda_h;
    s.min_intervals = o->min_intervals;
    s.half_width = o->half_width;
    s.scan_samples = o->scan_samples;
    s.node_tol = o->node_tol;
    if (o->guard > 0) s.forward.guard = o->guard;
    s.threads = o->threads;
    return s;
}

}  // namespace

extern "C" {

const char* dn_version(void) { return "1.0.0"; }

const char* dn_last_error(void) { return last_error.c_str(); }

const char* dn_status_category(dn_status status) {
    switch (status) {
    case DN_OK: return "ok";
    case DN_ERR_CONFIG: return "config";
    case DN_ERR_PARSE: return "parse";
    case DN_ERR_INVALID_PROBLEM: return "invalid_problem";
    case DN_ERR_NUMERIC: return "numeric";
    case DN_ERR_IO: return "io";
    case DN_ERR_INTERNAL: return "internal";
    }
    return "internal";
}

dn_status dn_problem_load(const char* path, dn_problem** out) {
    DN_REQUIRE(path && out, "null argument");
    return guarded([&] { *out = new dn_problem{dnodal::ProblemDefinition::create(dnodal::load_problem_file(path))}; });
}

dn_status dn_problem_parse(const char* text, dn_problem** out) {
    DN_REQUIRE(text && out, "null argument");
    return guarded([&] { *out = new dn_problem{dnodal::ProblemDefinition::create(dnodal::parse_problem(text))}; });
}

dn_status dn_problem_worked_example(double b1, double b2, dn_problem** out) {
    DN_REQUIRE(out, "null argument");
    return guarded([&] { *out = new dn_problem{dnodal::fixtures::worked_example(b1, b2)}; });
}

dn_status dn_problem_free_operator(double theta, double beta, dn_problem** out) {
    DN_REQUIRE(out, "null argument");
    return guarded([&] { *out = new dn_problem{dnodal::fixtures::free_problem(theta, beta)}; });
}

dn_status dn_problem_roundtrip_fixture(dn_problem** out) {
    DN_REQUIRE(out, "null argument");
    return guarded([&] { *out = new dn_problem{dnodal::fixtures::roundtrip_problem()}; });
}

void dn_problem_free(dn_problem* problem) { delete problem; }

dn_status dn_problem_boundary(const dn_problem* p, dn_boundary* out) {
    DN_REQUIRE(p && out, "null argument");
    const auto& bc = p->def.bc();
    *out = {bc.theta, bc.beta, bc.b1, bc.b2, bc.d1, bc.d2};
    return DN_OK;
}

dn_status dn_problem_mass(const dn_problem* p, double* m) {
    DN_REQUIRE(p && m, "null argument");
    *m = p->def.coeffs().m;
    return DN_OK;
}

dn_status dn_problem_potential(const dn_problem* p, double x, double* v) {
    DN_REQUIRE(p && v, "null argument");
    return guarded([&] { *v = p->def.coeffs().V(x); });
}

dn_status dn_problem_lprime(const dn_problem* p, double x, double* out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] {
        const auto& co = p->def.coeffs();
        *out = co.chi[1](x, x) - co.chi[2](x, x);
    });
}

dn_status dn_problem_integrals(const dn_problem* p, double x, double* nu, double* K, double* L) {
    DN_REQUIRE(p, "null argument");
    const auto& I = p->def.integrals();
    if (nu) *nu = I.nu_at(x);
    if (K) *K = I.K_at(x);
    if (L) *L = I.L_at(x);
    return DN_OK;
}

dn_status dn_asymptotic_constants(const dn_problem* p, double* B_hat, double* C_hat) {
    DN_REQUIRE(p, "null argument");
    const auto c = dnodal::asymptotic_constants(p->def);
    if (B_hat) *B_hat = c.B_hat;
    if (C_hat) *C_hat = c.C_hat;
    return DN_OK;
}

dn_status dn_lambda_asym(const dn_problem* p, int n, double* out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] { *out = dnodal::lambda_asym(p->def, n); });
}

dn_status dn_node_asym(const dn_problem* p, int n, int j, double* out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] { *out = dnodal::node_asym(p->def, n, j); });
}

dn_status dn_phi_asym(const dn_problem* p, double x, double lambda, double* phi1, double* phi2) {
    DN_REQUIRE(p, "null argument");
    DN_REQUIRE(lambda != 0.0, "lambda must be nonzero");
    const auto v = dnodal::phi_asym(p->def, x, lambda);
    if (phi1) *phi1 = v[0];
    if (phi2) *phi2 = v[1];
    return DN_OK;
}

double dn_default_max_lambda_h(void) { return dnodal::default_max_lambda_h; }

dn_status dn_required_intervals(double lambda, double max_lambda_h, int* out) {
    DN_REQUIRE(out, "null argument");
    return guarded([&] { *out = dnodal::required_intervals(lambda, max_lambda_h); });
}

dn_status dn_trajectory_compute(const dn_problem* p, double lambda, int intervals, double guard,
                                dn_trajectory** out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] {
        dnodal::ForwardOptions opts;
        if (guard > 0) opts.guard = guard;
        *out = new dn_trajectory{dnodal::integrate_ivp(p->def, lambda, intervals, opts)};
    });
}

size_t dn_trajectory_size(const dn_trajectory* t) { return t ? t->traj.grid.size() : 0; }

dn_status dn_trajectory_sample(const dn_trajectory* t, size_t i, double* x, double* phi1, double* phi2) {
    DN_REQUIRE(t, "null argument");
    DN_REQUIRE(i < t->traj.grid.size(), "sample index out of range");
    if (x) *x = t->traj.grid[i];
    if (phi1) *phi1 = t->traj.phi1[i];
    if (phi2) *phi2 = t->traj.phi2[i];
    return DN_OK;
}

dn_status dn_trajectory_write_csv(const dn_trajectory* t, const char* path) {
    DN_REQUIRE(t && path, "null argument");
    return guarded([&] {
        auto out = open_out(path);
        dnodal::write_trajectory_csv(t->traj, out);
        close_out(out, path);
    });
}

void dn_trajectory_free(dn_trajectory* t) { delete t; }

dn_status dn_char_fn(const dn_problem* p, double lambda, int intervals, double* value, double* normalized) {
    DN_REQUIRE(p, "null argument");
    return guarded([&] {
        const auto c = dnodal::char_fn(p->def, lambda, intervals);
        if (value) *value = c.value;
        if (normalized) *normalized = c.normalized;
    });
}

void dn_spectrum_options_default(dn_spectrum_options* o) {
    if (!o) return;
    const dnodal::SpectrumOptions s;
    *o = {s.tol, s.max_lambda_h, s.min_intervals, s.half_width, s.scan_samples, s.node_tol, s.forward.guard, s.threads};
}

dn_status dn_find_eigenvalue(const dn_problem* p, int n, const dn_spectrum_options* o, double* lambda,
                             double* residual) {
    DN_REQUIRE(p && lambda, "null argument");
    return guarded([&] {
        const auto r = dnodal::find_eigenvalue(p->def, n, spectrum_options(o));
        *lambda = r.lambda;
        if (residual) *residual = r.residual;
    });
}

dn_status dn_spectrum_compute(const dn_problem* p, int n_min, int n_max, const dn_spectrum_options* o,
                              dn_spectrum** out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] {
        const auto s = dnodal::compute_spectrum(p->def, n_min, n_max, spectrum_options(o));
        auto h = new dn_spectrum;
        for (const auto& [n, e] : s.entries) h->entries.push_back(e);
        for (const auto& f : s.failures) h->failures.push_back(f);
        *out = h;
    });
}

size_t dn_spectrum_size(const dn_spectrum* s) { return s ? s->entries.size() : 0; }

dn_status dn_spectrum_entry(const dn_spectrum* s, size_t i, int* n, double* lambda, double* residual) {
    DN_REQUIRE(s, "null argument");
    DN_REQUIRE(i < s->entries.size(), "entry index out of range");
    const auto& e = s->entries[i];
    if (n) *n = e.n;
    if (lambda) *lambda = e.lambda;
    if (residual) *residual = e.residual;
    return DN_OK;
}

size_t dn_spectrum_failure_count(const dn_spectrum* s) { return s ? s->failures.size() : 0; }

dn_status dn_spectrum_failure(const dn_spectrum* s, size_t i, int* n, const char** message) {
    DN_REQUIRE(s, "null argument");
    DN_REQUIRE(i < s->failures.size(), "failure index out of range");
    if (n) *n = s->failures[i].first;
    if (message) *message = s->failures[i].second.c_str();
    return DN_OK;
}

dn_status dn_spectrum_write_csv(const dn_spectrum* s, const char* path) {
    DN_REQUIRE(s && path, "null argument");
    return guarded([&] {
        dnodal::Spectrum sp;
        for (const auto& e : s->entries) sp.entries[e.n] = e;
        auto out = open_out(path);
        dnodal::write_spectrum_csv(sp, out);
        close_out(out, path);
    });
}

void dn_spectrum_free(dn_spectrum* s) { delete s; }

dn_status dn_nodal_compute(const dn_problem* p, int n_min, int n_max, const dn_spectrum_options* o,
                           dn_nodal_data** out, dn_spectrum** spectrum_out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] {
        auto report = dnodal::nodal_data(p->def, n_min, n_max, spectrum_options(o));
        auto h = new dn_nodal_data;
        h->data = std::move(report.data);
        h->index();
        for (const auto& f : report.failures) h->failures.push_back(f);
        if (spectrum_out) {
            auto s = new dn_spectrum;
            for (const auto& [n, e] : report.spectrum.entries) s->entries.push_back(e);
            for (const auto& f : report.spectrum.failures) s->failures.push_back(f);
            *spectrum_out = s;
        }
        *out = h;
    });
}

dn_status dn_nodal_synthesize(const dn_problem* p, int n_min, int n_max, dn_nodal_data** out) {
    DN_REQUIRE(p && out, "null argument");
    return guarded([&] {
        auto h = new dn_nodal_data;
        h->data = dnodal::synthesize_nodal_data(p->def, n_min, n_max);
        h->index();
        *out = h;
    });
}

dn_status dn_nodal_read_csv(const char* path, dn_nodal_data** out) {
    DN_REQUIRE(path && out, "null argument");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw dnodal::IoError(std::string("cannot open nodal data file '") + path + "'");
        auto h = new dn_nodal_data;
        try {
            h->data = dnodal::read_nodal_csv(in);
        } catch (...) {
            delete h;
            throw;
        }
        h->index();
        *out = h;
    });
}

dn_status dn_nodal_write_csv(const dn_nodal_data* d, const char* path) {
    DN_REQUIRE(d && path, "null argument");
    return guarded([&] {
        auto out = open_out(path);
        dnodal::write_nodal_csv(d->data, out);
        close_out(out, path);
    });
}

int dn_nodal_is_synthetic(const dn_nodal_data* d) {
    return d && d->data.source == dnodal::NodalSource::synthetic ? 1 : 0;
}

size_t dn_nodal_list_count(const dn_nodal_data* d) { return d ? d->lists.size() : 0; }

dn_status dn_nodal_list(const dn_nodal_data* d, size_t i, int* n, const double** nodes, size_t* count) {
    DN_REQUIRE(d, "null argument");
    DN_REQUIRE(i < d->lists.size(), "list index out of range");
    const auto& [key, xs] = d->lists[i];
    if (n) *n = key;
    if (nodes) *nodes = xs->data();
    if (count) *count = xs->size();
    return DN_OK;
}

size_t dn_nodal_failure_count(const dn_nodal_data* d) { return d ? d->failures.size() : 0; }

dn_status dn_nodal_failure(const dn_nodal_data* d, size_t i, int* n, const char** message) {
    DN_REQUIRE(d, "null argument");
    DN_REQUIRE(i < d->failures.size(), "failure index out of range");
    if (n) *n = d->failures[i].first;
    if (message) *message = d->failures[i].second.c_str();
    return DN_OK;
}

void dn_nodal_free(dn_nodal_data* d) { delete d; }

void dn_inverse_options_default(dn_inverse_options* o) {
    if (!o) return;
    const dnodal::InverseOptions d;
    *o = {d.window, d.stage1_gate, 0, 0.0, 0, d.min_samples, d.radicand_floor, d.threads};
}

dn_status dn_reconstruct(const dn_nodal_data* d, int grid_size, const dn_inverse_options* o,
                         dn_reconstruction** out) {
    DN_REQUIRE(d && out, "null argument");
    return guarded([&] {
        dnodal::InverseOptions opts;
        if (o) {
            opts.window = o->window;
            opts.stage1_gate = o->stage1_gate;
            if (o->has_known_m) opts.known_m = o->known_m;
            opts.selection = o->nearest_node ? dnodal::NodeSelection::nearest : dnodal::NodeSelection::interpolate;
            opts.min_samples = o->min_samples;
            opts.radicand_floor = o->radicand_floor;
            opts.threads = o->threads;
        }
        *out = new dn_reconstruction{dnodal::reconstruct(d->data, grid_size, opts)};
    });
}

dn_status dn_reconstruction_summary_get(const dn_reconstruction* r, dn_reconstruction_summary* out) {
    DN_REQUIRE(r && out, "null argument");
    const auto& x = r->result;
    *out = {x.theta_hat,
            x.beta_hat,
            x.m_hat,
            x.radicand,
            x.m_known ? 1 : 0,
            x.m_degenerate ? 1 : 0,
            x.offset,
            x.f_stage.max_dispersion,
            x.g_stage.max_dispersion,
            x.f_stage.max_tail_gap,
            x.g_stage.max_tail_gap,
            x.f_stage.valid_points,
            x.g_stage.valid_points,
            x.v_integral};
    return DN_OK;
}

size_t dn_reconstruction_size(const dn_reconstruction* r) { return r ? r->result.f_hat.x.size() : 0; }

dn_status dn_reconstruction_sample(const dn_reconstruction* r, size_t i, double* x, double* f, double* g, double* V,
                                   double* Lprime) {
    DN_REQUIRE(r, "null argument");
    const auto& res = r->result;
    DN_REQUIRE(i < res.f_hat.x.size(), "sample index out of range");
    if (x) *x = res.f_hat.x[i];
    if (f) *f = res.f_hat.y[i];
    if (g) *g = res.g_hat.y[i];
    if (V) *V = res.V_hat.y[i];
    if (Lprime) *Lprime = res.Lprime_hat.y[i];
    return DN_OK;
}

dn_status dn_reconstruction_write_csv(const dn_reconstruction* r, const char* path) {
    DN_REQUIRE(r && path, "null argument");
    return guarded([&] {
        auto out = open_out(path);
        dnodal::write_reconstruction_csv(r->result, out);
        close_out(out, path);
    });
}

void dn_reconstruction_free(dn_reconstruction* r) { delete r; }

}  // extern "C"
