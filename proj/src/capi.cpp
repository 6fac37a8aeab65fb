#include "twophase.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "tpo/analysis.hpp"
#include "tpo/config.hpp"
#include "tpo/elliptic.hpp"
#include "tpo/parabolic.hpp"
#include "tpo/study.hpp"
#include "tpo/verify.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
tpo_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const tpo::ConfigError& e) {
        set_error(e.what());
        return TPO_ERR_CONFIG;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return TPO_ERR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return TPO_ERR_NUMERIC;
    } catch (const std::exception& e) {
        set_error(e.what());
        return TPO_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct tpo_problem {
    tpo::ProblemSpec spec;
};

struct tpo_elliptic_result {
    tpo::GridFunction values;
    tpo::EllipticSolveReport report;
};

struct tpo_trace {
    tpo::SolutionTrace trace;
};

extern "C" {

const char* tpo_version(void) { return "0.1.0"; }

const char* tpo_last_error(void) { return g_last_error.c_str(); }

tpo_status tpo_problem_from_json(const char* json_text, tpo_problem** out) {
    if (!json_text || !out) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        // accept either a full config document or a bare problem block
        nlohmann::json doc = nlohmann::json::parse(std::string(json_text), nullptr, false);
        std::string wrapped;
        if (doc.is_discarded()) {
            wrapped = json_text;   // let the config parser produce the diagnostic
        } else if (doc.contains("problem")) {
            wrapped = doc.dump();
        } else {
            wrapped = nlohmann::json{{"problem", doc}}.dump();
        }
        tpo::RunConfig rc = tpo::parse_run_config(wrapped);
        *out = new tpo_problem{std::move(rc.problem)};
        return TPO_OK;
    });
}

tpo_status tpo_problem_builtin(const char* name, int nodes_per_dim, int time_steps,
                               tpo_problem** out) {
    if (!name || !out) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new tpo_problem{tpo::make_builtin(name, nodes_per_dim, time_steps)};
        return TPO_OK;
    });
}

void tpo_problem_free(tpo_problem* p) { delete p; }

int tpo_problem_dim(const tpo_problem* p) { return p ? p->spec.grid.dim() : 0; }

int tpo_problem_node_count(const tpo_problem* p) { return p ? p->spec.grid.node_count() : 0; }

double tpo_problem_spacing(const tpo_problem* p) { return p ? p->spec.grid.spacing() : 0.0; }

double tpo_problem_horizon(const tpo_problem* p) {
    return (p && p->spec.time) ? p->spec.time->horizon : 0.0;
}

int tpo_problem_time_steps(const tpo_problem* p) {
    return (p && p->spec.time) ? p->spec.time->steps : 0;
}

double tpo_problem_compatibility_gap(const tpo_problem* p) {
    return p ? p->spec.compatibility_gap : 0.0;
}

tpo_status tpo_problem_node_coords(const tpo_problem* p, double* xs, double* ys) {
    if (!p || !xs || (p->spec.grid.dim() == 2 && !ys)) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    for (int i = 0; i < p->spec.grid.node_count(); ++i) {
        const auto c = p->spec.grid.coord(i);
        xs[i] = c[0];
        if (ys) ys[i] = c[1];
    }
    return TPO_OK;
}

tpo_status tpo_solve_elliptic(const tpo_problem* p, const char* solver_json,
                              tpo_elliptic_result** out) {
    if (!p || !out) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::StepperConfig stepper;
        tpo::SolverConfig cfg;
        tpo::parse_solver_block(solver_json ? solver_json : "", stepper, cfg);
        auto [u, rep] = tpo::solve_elliptic(p->spec, cfg);
        *out = new tpo_elliptic_result{std::move(u), rep};
        return TPO_OK;
    });
}

void tpo_elliptic_result_free(tpo_elliptic_result* r) { delete r; }

tpo_status tpo_elliptic_values(const tpo_elliptic_result* r, double* buf, size_t len) {
    if (!r || !buf || len < r->values.size()) {
        set_error("buffer too small or null");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(buf, r->values.data(), r->values.size() * sizeof(double));
    return TPO_OK;
}

int tpo_elliptic_iterations(const tpo_elliptic_result* r) { return r ? r->report.iterations : 0; }

int tpo_elliptic_converged(const tpo_elliptic_result* r) {
    return (r && r->report.converged) ? 1 : 0;
}

double tpo_elliptic_residual_norm(const tpo_elliptic_result* r) {
    return r ? r->report.final_residual_norm : 0.0;
}

double tpo_elliptic_update_norm(const tpo_elliptic_result* r) {
    return r ? r->report.final_update_norm : 0.0;
}

tpo_status tpo_solve_parabolic(const tpo_problem* p, const char* solver_json, tpo_trace** out) {
    if (!p || !out) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::StepperConfig stepper;
        tpo::SolverConfig cfg;
        tpo::parse_solver_block(solver_json ? solver_json : "", stepper, cfg);
        *out = new tpo_trace{tpo::solve_parabolic(p->spec, stepper)};
        return TPO_OK;
    });
}

void tpo_trace_free(tpo_trace* t) { delete t; }

int tpo_trace_snapshot_count(const tpo_trace* t) {
    return t ? static_cast<int>(t->trace.snapshots.size()) : 0;
}

double tpo_trace_snapshot_time(const tpo_trace* t, int k) {
    if (!t || k < 0 || k >= static_cast<int>(t->trace.snapshots.size())) return 0.0;
    return t->trace.snapshots[k].t;
}

static tpo_status copy_snapshot_field(const tpo_trace* t, int k, bool derivative, double* buf,
                                      size_t len) {
    if (!t || !buf || k < 0 || k >= static_cast<int>(t->trace.snapshots.size())) {
        set_error("bad snapshot index or null buffer");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    const auto& field = derivative ? t->trace.snapshots[k].ut : t->trace.snapshots[k].u;
    if (len < field.size()) {
        set_error("buffer too small");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(buf, field.data(), field.size() * sizeof(double));
    return TPO_OK;
}

tpo_status tpo_trace_snapshot_values(const tpo_trace* t, int k, double* buf, size_t len) {
    return copy_snapshot_field(t, k, false, buf, len);
}

tpo_status tpo_trace_snapshot_ut(const tpo_trace* t, int k, double* buf, size_t len) {
    return copy_snapshot_field(t, k, true, buf, len);
}

int tpo_trace_step_count(const tpo_trace* t) {
    return t ? static_cast<int>(t->trace.diagnostics.size()) : 0;
}

tpo_status tpo_trace_diagnostics(const tpo_trace* t, int step, double* time, double* ut_sup,
                                 double* residual_sup, int* inner_iterations) {
    if (!t || step < 0 || step >= static_cast<int>(t->trace.diagnostics.size())) {
        set_error("bad step index");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    const auto& d = t->trace.diagnostics[step];
    if (time) *time = d.t;
    if (ut_sup) *ut_sup = d.ut_sup;
    if (residual_sup) *residual_sup = d.residual_sup;
    if (inner_iterations) *inner_iterations = d.inner_iterations;
    return TPO_OK;
}

tpo_status tpo_classify_signs(const tpo_problem* p, const double* values, double tol_sign,
                              int* classes) {
    if (!p || !values || !classes) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::GridFunction u(values, values + p->spec.grid.node_count());
        tpo::SignSets s = tpo::classify_signs(p->spec.grid, u, tol_sign);
        std::memcpy(classes, s.classes.data(), s.classes.size() * sizeof(int));
        return TPO_OK;
    });
}

tpo_status tpo_free_boundary(const tpo_problem* p, const double* values, double tol_sign,
                             double* points, size_t capacity, size_t* count) {
    if (!p || !values || !count || (capacity > 0 && !points)) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::GridFunction u(values, values + p->spec.grid.node_count());
        tpo::SignSets s = tpo::classify_signs(p->spec.grid, u, tol_sign);
        const int dim = p->spec.grid.dim();
        *count = s.boundary_points.size();
        const size_t n = std::min(capacity, s.boundary_points.size());
        for (size_t k = 0; k < n; ++k)
            for (int a = 0; a < dim; ++a) points[k * dim + a] = s.boundary_points[k][a];
        return TPO_OK;
    });
}

tpo_status tpo_residual_band_check(const tpo_problem* p, const double* values,
                                   const double* time_derivative, double tol, int* worst_node,
                                   int* passed) {
    if (!p || !values || !passed) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const int n = p->spec.grid.node_count();
        tpo::GridFunction u(values, values + n);
        tpo::GridFunction ut;
        if (time_derivative) ut.assign(time_derivative, time_derivative + n);
        tpo::BandCheck bc =
            tpo::residual_band_check(p->spec.grid, u, p->spec.lambda_plus, p->spec.lambda_minus,
                                     tol, time_derivative ? &ut : nullptr);
        *passed = bc.passed ? 1 : 0;
        if (worst_node) *worst_node = bc.worst_node;
        return TPO_OK;
    });
}

tpo_status tpo_convergence_study(const char* config_json, char** report_json) {
    if (!config_json || !report_json) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::StudyResult r = tpo::run_study(config_json);
        *report_json = dup_string(tpo::study_report_json(r));
        return TPO_OK;
    });
}

tpo_status tpo_verify_run(unsigned long long seed, int trials, char** report_text, int* passed) {
    if (!report_text || !passed) {
        set_error("null argument");
        return TPO_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        tpo::VerifyOptions opt;
        opt.seed = seed;
        if (trials > 0) opt.fuzz_trials = trials;
        tpo::VerifyResult r = tpo::run_verification(opt);
        *report_text = dup_string(r.report);
        *passed = r.passed ? 1 : 0;
        return TPO_OK;
    });
}

void tpo_string_free(char* s) { std::free(s); }

} // extern "C"
