#ifndef DNODAL_DNODAL_H
#define DNODAL_DNODAL_H

/*
 * C interface to the dnodal solver: forward integration, eigenvalues and
 * nodes, asymptotic predictions and reconstruction from nodal data.
 *
 * Objects are opaque handles released with the matching *_free function
 * (which accepts NULL). Functions return a dn_status; on failure the message
 * is available from dn_last_error() on the calling thread until the next
 * failing call. Output pointers are written only on success.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define DN_API __attribute__((visibility("default")))
#else
#define DN_API
#endif

typedef enum dn_status {
    DN_OK = 0,
    DN_ERR_CONFIG = 1,          /* invalid argument or option */
    DN_ERR_PARSE = 2,           /* malformed problem file, expression or CSV */
    DN_ERR_INVALID_PROBLEM = 3, /* standing assumptions violated */
    DN_ERR_NUMERIC = 4,         /* bracketing, calibration, resolution, radicand */
    DN_ERR_IO = 5,              /* file access */
    DN_ERR_INTERNAL = 6
} dn_status;

typedef struct dn_problem dn_problem;
typedef struct dn_trajectory dn_trajectory;
typedef struct dn_spectrum dn_spectrum;
typedef struct dn_nodal_data dn_nodal_data;
typedef struct dn_reconstruction dn_reconstruction;

DN_API const char* dn_version(void);
DN_API const char* dn_last_error(void);
/* "config", "parse", "invalid_problem", "numeric", "io", "internal" or "ok". */
DN_API const char* dn_status_category(dn_status status);

/* ---- problem ---------------------------------------------------------- */

typedef struct dn_boundary {
    double theta, beta, b1, b2, d1, d2;
} dn_boundary;

DN_API dn_status dn_problem_load(const char* path, dn_problem** out);
DN_API dn_status dn_problem_parse(const char* text, dn_problem** out);
/* Built-in fixtures. */
DN_API dn_status dn_problem_worked_example(double b1, double b2, dn_problem** out);
DN_API dn_status dn_problem_free_operator(double theta, double beta, dn_problem** out);
DN_API dn_status dn_problem_roundtrip_fixture(dn_problem** out);
DN_API void dn_problem_free(dn_problem* problem);

/* Canonical boundary data (angles in (-pi/2, pi/2]). */
DN_API dn_status dn_problem_boundary(const dn_problem* problem, dn_boundary* out);
DN_API dn_status dn_problem_mass(const dn_problem* problem, double* m);
DN_API dn_status dn_problem_potential(const dn_problem* problem, double x, double* v);
/* L'(x) = chi_12(x, x) - chi_21(x, x). */
DN_API dn_status dn_problem_lprime(const dn_problem* problem, double x, double* out);
DN_API dn_status dn_problem_integrals(const dn_problem* problem, double x, double* nu, double* K, double* L);

/* ---- asymptotics ------------------------------------------------------ */

DN_API dn_status dn_asymptotic_constants(const dn_problem* problem, double* B_hat, double* C_hat);
DN_API dn_status dn_lambda_asym(const dn_problem* problem, int n, double* out);
DN_API dn_status dn_node_asym(const dn_problem* problem, int n, int j, double* out);
DN_API dn_status dn_phi_asym(const dn_problem* problem, double x, double lambda, double* phi1, double* phi2);

/* ---- forward ---------------------------------------------------------- */

DN_API double dn_default_max_lambda_h(void);
DN_API dn_status dn_required_intervals(double lambda, double max_lambda_h, int* out);
/* guard <= 0 selects the default oscillation guard. */
DN_API dn_status dn_trajectory_compute(const dn_problem* problem, double lambda, int intervals, double guard,
                                       dn_trajectory** out);
DN_API size_t dn_trajectory_size(const dn_trajectory* traj);
DN_API dn_status dn_trajectory_sample(const dn_trajectory* traj, size_t i, double* x, double* phi1, double* phi2);
DN_API dn_status dn_trajectory_write_csv(const dn_trajectory* traj, const char* path);
DN_API void dn_trajectory_free(dn_trajectory* traj);

DN_API dn_status dn_char_fn(const dn_problem* problem, double lambda, int intervals, double* value,
                            double* normalized);

/* ---- spectrum and nodes ---------------------------------------------- */

typedef struct dn_spectrum_options {
    double tol;
    double max_lambda_h;
    int min_intervals;
    double half_width;
    int scan_samples;
    double node_tol;
    double guard;
    unsigned threads; /* 0 = hardware concurrency */
} dn_spectrum_options;

DN_API void dn_spectrum_options_default(dn_spectrum_options* options);

DN_API dn_status dn_find_eigenvalue(const dn_problem* problem, int n, const dn_spectrum_options* options,
                                    double* lambda, double* residual);
DN_API dn_status dn_spectrum_compute(const dn_problem* problem, int n_min, int n_max,
                                     const dn_spectrum_options* options, dn_spectrum** out);
DN_API size_t dn_spectrum_size(const dn_spectrum* s);
DN_API dn_status dn_spectrum_entry(const dn_spectrum* s, size_t i, int* n, double* lambda, double* residual);
DN_API size_t dn_spectrum_failure_count(const dn_spectrum* s);
/* The message pointer stays valid for the lifetime of the handle. */
DN_API dn_status dn_spectrum_failure(const dn_spectrum* s, size_t i, int* n, const char** message);
DN_API dn_status dn_spectrum_write_csv(const dn_spectrum* s, const char* path);
DN_API void dn_spectrum_free(dn_spectrum* s);

/* Numeric nodal data; per-n failures are recorded, not returned as errors.
   spectrum_out may be NULL. */
DN_API dn_status dn_nodal_compute(const dn_problem* problem, int n_min, int n_max,
                                  const dn_spectrum_options* options, dn_nodal_data** out,
                                  dn_spectrum** spectrum_out);
DN_API dn_status dn_nodal_synthesize(const dn_problem* problem, int n_min, int n_max, dn_nodal_data** out);
DN_API dn_status dn_nodal_read_csv(const char* path, dn_nodal_data** out);
DN_API dn_status dn_nodal_write_csv(const dn_nodal_data* data, const char* path);
DN_API int dn_nodal_is_synthetic(const dn_nodal_data* data);
DN_API size_t dn_nodal_list_count(const dn_nodal_data* data);
DN_API dn_status dn_nodal_list(const dn_nodal_data* data, size_t i, int* n, const double** nodes, size_t* count);
DN_API size_t dn_nodal_failure_count(const dn_nodal_data* data);
DN_API dn_status dn_nodal_failure(const dn_nodal_data* data, size_t i, int* n, const char** message);
DN_API void dn_nodal_free(dn_nodal_data* data);

/* ---- reconstruction --------------------------------------------------- */

typedef struct dn_inverse_options {
    int window;
    double stage1_gate;
    int has_known_m;
    double known_m;
    int nearest_node; /* 0 = interpolate between bracketing nodes */
    int min_samples;
    double radicand_floor;
    unsigned threads;
} dn_inverse_options;

DN_API void dn_inverse_options_default(dn_inverse_options* options);

typedef struct dn_reconstruction_summary {
    double theta_hat, beta_hat, m_hat;
    double radicand;
    int m_known, m_degenerate;
    int offset;
    double f_dispersion, g_dispersion;
    double f_tail_gap, g_tail_gap;
    int f_valid_points, g_valid_points;
    double v_integral;
} dn_reconstruction_summary;

DN_API dn_status dn_reconstruct(const dn_nodal_data* data, int grid_size, const dn_inverse_options* options,
                                dn_reconstruction** out);
DN_API dn_status dn_reconstruction_summary_get(const dn_reconstruction* r, dn_reconstruction_summary* out);
DN_API size_t dn_reconstruction_size(const dn_reconstruction* r);
DN_API dn_status dn_reconstruction_sample(const dn_reconstruction* r, size_t i, double* x, double* f, double* g,
                                          double* V, double* Lprime);
DN_API dn_status dn_reconstruction_write_csv(const dn_reconstruction* r, const char* path);
DN_API void dn_reconstruction_free(dn_reconstruction* r);

#ifdef __cplusplus
}
#endif

#endif /* DNODAL_DNODAL_H */
