/* C API for the two-phase obstacle-problem finite-difference solver.
 *
 * All objects are opaque handles created and destroyed through this
 * interface. Functions return tpo_status; on any non-OK status,
 * tpo_last_error() carries a thread-local human-readable message valid
 * until the next API call on the same thread.
 */
#ifndef TWOPHASE_H
#define TWOPHASE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpo_status {
    TPO_OK = 0,
    TPO_ERR_INVALID_ARGUMENT = 1,
    TPO_ERR_CONFIG = 2,            /* malformed configuration document */
    TPO_ERR_NO_CONVERGENCE = 3,
    TPO_ERR_NUMERIC = 4,           /* NaN, CFL violation, oracle inconsistency */
    TPO_ERR_INTERNAL = 5
} tpo_status;

typedef struct tpo_problem tpo_problem;
typedef struct tpo_elliptic_result tpo_elliptic_result;
typedef struct tpo_trace tpo_trace;

const char* tpo_version(void);
const char* tpo_last_error(void);

/* -- problems ---------------------------------------------------------- */

/* json_text: a config document or just its "problem" block. */
tpo_status tpo_problem_from_json(const char* json_text, tpo_problem** out);

/* name: "fig1" | "fig2" | "fig3"; time_steps == 0 gives the elliptic
 * (time-independent) version. */
tpo_status tpo_problem_builtin(const char* name, int nodes_per_dim, int time_steps,
                               tpo_problem** out);
void tpo_problem_free(tpo_problem* p);

int tpo_problem_dim(const tpo_problem* p);
int tpo_problem_node_count(const tpo_problem* p);
double tpo_problem_spacing(const tpo_problem* p);
double tpo_problem_horizon(const tpo_problem* p);      /* 0 when elliptic */
int tpo_problem_time_steps(const tpo_problem* p);      /* 0 when elliptic */
double tpo_problem_compatibility_gap(const tpo_problem* p);

/* xs (and ys for 2D problems) must hold node_count doubles; ys may be
 * NULL for 1D problems. */
tpo_status tpo_problem_node_coords(const tpo_problem* p, double* xs, double* ys);

/* -- elliptic solve ---------------------------------------------------- */

/* solver_json: optional solver block ("{}" or NULL for defaults). */
tpo_status tpo_solve_elliptic(const tpo_problem* p, const char* solver_json,
                              tpo_elliptic_result** out);
void tpo_elliptic_result_free(tpo_elliptic_result* r);

tpo_status tpo_elliptic_values(const tpo_elliptic_result* r, double* buf, size_t len);
int tpo_elliptic_iterations(const tpo_elliptic_result* r);
int tpo_elliptic_converged(const tpo_elliptic_result* r);
double tpo_elliptic_residual_norm(const tpo_elliptic_result* r);
double tpo_elliptic_update_norm(const tpo_elliptic_result* r);

/* -- parabolic solve --------------------------------------------------- */

tpo_status tpo_solve_parabolic(const tpo_problem* p, const char* solver_json,
                               tpo_trace** out);
void tpo_trace_free(tpo_trace* t);

int tpo_trace_snapshot_count(const tpo_trace* t);
double tpo_trace_snapshot_time(const tpo_trace* t, int k);
tpo_status tpo_trace_snapshot_values(const tpo_trace* t, int k, double* buf, size_t len);
/* discrete time derivative into snapshot k (zeros at k = 0) */
tpo_status tpo_trace_snapshot_ut(const tpo_trace* t, int k, double* buf, size_t len);
int tpo_trace_step_count(const tpo_trace* t);
tpo_status tpo_trace_diagnostics(const tpo_trace* t, int step, double* time,
                                 double* ut_sup, double* residual_sup,
                                 int* inner_iterations);

/* -- analysis ---------------------------------------------------------- */

/* classes: node_count ints, set to +1 / -1 / 0. */
tpo_status tpo_classify_signs(const tpo_problem* p, const double* values,
                              double tol_sign, int* classes);

/* Free-boundary points as dim-sized tuples packed into `points`
 * (capacity counts tuples). *count receives the number found; if it
 * exceeds capacity only the first `capacity` tuples are written. */
tpo_status tpo_free_boundary(const tpo_problem* p, const double* values,
                             double tol_sign, double* points, size_t capacity,
                             size_t* count);

/* Residual band check; time_derivative may be NULL (elliptic case).
 * *passed receives 1/0; worst_node (optional) the first offending node. */
tpo_status tpo_residual_band_check(const tpo_problem* p, const double* values,
                                   const double* time_derivative, double tol,
                                   int* worst_node, int* passed);

/* -- drivers ----------------------------------------------------------- */

/* Convergence study; *report_json receives a malloc'd JSON document,
 * released with tpo_string_free. */
tpo_status tpo_convergence_study(const char* config_json, char** report_json);

/* Verification suite; report is deterministic for a given seed.
 * trials <= 0 selects the defaults. */
tpo_status tpo_verify_run(unsigned long long seed, int trials, char** report_text,
                          int* passed);

void tpo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TWOPHASE_H */
