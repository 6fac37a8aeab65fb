#include "tpo/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tpo/operators.hpp"

namespace tpo {

GridFunction explicit_step(const GridSpec& grid, double dt, const GridFunction& u_m,
                           const std::vector<double>& lambda_plus,
                           const std::vector<double>& lambda_minus,
                           const GridFunction& boundary_new) {
    const double dx = grid.spacing();
    const int K = grid.stencil_size();
    const auto cfl = cfl_check(dt, dx, K);
    if (!cfl.ok)
        throw std::runtime_error("parabolic: CFL violated, dt/dx^2 = " +
                                 std::to_string(cfl.ratio) + " exceeds 1/K = " +
                                 std::to_string(cfl.bound));

    const double c = dt / (dx * dx);
    GridFunction out = boundary_new;
    for (int i : grid.interior_nodes()) {
        const double lsum = K * u_m[i] - grid.neighbor_sum(i, u_m);
        const double a = u_m[i] - c * lsum;
        const double half = std::min(a + dt * lambda_minus[i], 0.0);
        const double v = std::max(a - dt * lambda_plus[i], half);
        if (!std::isfinite(v))
            throw std::runtime_error("parabolic: NaN in explicit step");
        out[i] = v;
    }
    return out;
}

std::pair<GridFunction, InnerReport>
implicit_step(const GridSpec& grid, double dt, const GridFunction& u_m,
              const std::vector<double>& lambda_plus,
              const std::vector<double>& lambda_minus,
              const GridFunction& boundary_new,
              const SolverConfig& inner, int max_inner) {
    const double dx = grid.spacing();
    const int K = grid.stencil_size();
    const double c = dt / (dx * dx);
    const double denom = 1.0 + c * K;
    const int cap = max_inner > 0 ? max_inner : 100 * grid.node_count();

    // warm start from the previous level, Dirichlet data at the new one
    GridFunction u = boundary_new;
    for (int i : grid.interior_nodes()) u[i] = u_m[i];

    InnerReport rep;
    for (int it = 0; it < cap; ++it) {
        double update = 0.0;
        for (int i : grid.interior_nodes()) {
            const double s = grid.neighbor_sum(i, u);
            const double b = (u_m[i] + c * s) / denom;
            const double lo = b - dt * lambda_plus[i] / denom;
            const double hi = b + dt * lambda_minus[i] / denom;
            const double v = std::max(lo, std::min(hi, 0.0));
            if (!std::isfinite(v))
                throw std::runtime_error("parabolic: NaN during implicit inner sweep");
            update = std::max(update, std::abs(v - u[i]));
            u[i] = v;
        }
        rep.iterations = it + 1;
        rep.final_update_norm = update;
        if (update < inner.tol_update) {
            rep.final_residual_norm =
                parabolic_residual_implicit(grid, dt, u_m, u, lambda_plus, lambda_minus).sup;
            if (rep.final_residual_norm < inner.tol_residual)
                return {std::move(u), rep};
        }
    }
    rep.final_residual_norm =
        parabolic_residual_implicit(grid, dt, u_m, u, lambda_plus, lambda_minus).sup;
    throw std::runtime_error("parabolic: implicit inner solver did not converge (" +
                             std::to_string(rep.iterations) + " sweeps, residual " +
                             std::to_string(rep.final_residual_norm) + ")");
}

SolutionTrace solve_parabolic(const ProblemSpec& problem, const StepperConfig& config) {
    if (!problem.time)
        throw std::invalid_argument("parabolic: problem has no time grid");
    const GridSpec& g = problem.grid;
    const TimeGrid& tg = *problem.time;
    const double dt = tg.dt();
    const int M = tg.steps;
    const int stride =
        config.snapshot_stride > 0 ? config.snapshot_stride : std::max(1, M / 100);

    if (config.mode == SteppingMode::Explicit) {
        const auto cfl = cfl_check(dt, g.spacing(), g.stencil_size());
        if (!cfl.ok)
            throw std::runtime_error("parabolic: explicit mode needs dt/dx^2 <= 1/K, got " +
                                     std::to_string(cfl.ratio) + " > " +
                                     std::to_string(cfl.bound));
    }

    SolutionTrace trace;
    GridFunction u = problem.initial_state();
    trace.snapshots.push_back({0.0, u, GridFunction(g.node_count(), 0.0)});

    for (int m = 0; m < M; ++m) {
        const double t_new = (m + 1 == M) ? tg.horizon : dt * (m + 1);
        const GridFunction bnd = problem.sample_boundary_onto(u, t_new);

        GridFunction u_new;
        StepDiagnostics d;
        d.t = t_new;
        if (config.mode == SteppingMode::Explicit) {
            u_new = explicit_step(g, dt, u, problem.lambda_plus, problem.lambda_minus, bnd);
            d.residual_sup =
                parabolic_residual(g, dt, u, u_new, problem.lambda_plus, problem.lambda_minus).sup;
        } else {
            auto [v, rep] = implicit_step(g, dt, u, problem.lambda_plus, problem.lambda_minus,
                                          bnd, config.inner, config.max_inner);
            u_new = std::move(v);
            d.residual_sup = rep.final_residual_norm;
            d.inner_iterations = rep.iterations;
        }

        double ut_sup = 0.0;
        for (int i = 0; i < g.node_count(); ++i)
            ut_sup = std::max(ut_sup, std::abs(u_new[i] - u[i]) / dt);
        d.ut_sup = ut_sup;
        trace.diagnostics.push_back(d);

        const bool last = (m + 1 == M);
        if (last || (m + 1) % stride == 0) {
            GridFunction ut(g.node_count(), 0.0);
            for (int i = 0; i < g.node_count(); ++i) ut[i] = (u_new[i] - u[i]) / dt;
            trace.snapshots.push_back({t_new, u_new, std::move(ut)});
        }
        u = std::move(u_new);
    }
    return trace;
}

} // namespace tpo
