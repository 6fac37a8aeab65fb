// Time-marching solvers: the explicit two-step projected method and the
// implicit (backward-Euler) unconditionally stable variant.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tpo/elliptic.hpp"
#include "tpo/problem.hpp"

namespace tpo {

enum class SteppingMode { Explicit, Implicit };

struct StepperConfig {
    SteppingMode mode = SteppingMode::Explicit;
    double cfl_safety = 0.9;     // for auto-dt helpers, fraction of dx^2/K
    int snapshot_stride = 0;     // 0 -> max(1, M/100)
    SolverConfig inner;          // implicit-mode inner PGS tolerances
    int max_inner = 0;           // 0 -> 100 * node count
};

struct StepDiagnostics {
    double t = 0.0;              // time reached after the step
    double ut_sup = 0.0;         // sup |(u^{m+1} - u^m)/dt|
    double residual_sup = 0.0;   // scheme residual of the completed step
    int inner_iterations = 0;    // 0 in explicit mode
};

struct Snapshot {
    double t = 0.0;
    GridFunction u;
    GridFunction ut;             // discrete time derivative into this level; 0 at t=0
};

struct SolutionTrace {
    std::vector<Snapshot> snapshots;
    std::vector<StepDiagnostics> diagnostics;   // one entry per step
};

struct InnerReport {
    int iterations = 0;
    double final_update_norm = 0.0;
    double final_residual_norm = 0.0;
};

// One explicit step. boundary_new carries the Dirichlet values at the new
// time level (only its boundary entries are read). Throws if the CFL bound
// dt/dx^2 <= 1/K is violated.
GridFunction explicit_step(const GridSpec& grid, double dt, const GridFunction& u_m,
                           const std::vector<double>& lambda_plus,
                           const std::vector<double>& lambda_minus,
                           const GridFunction& boundary_new);

// One backward-Euler step, solved by projected Gauss-Seidel with the
// pointwise closed form. Unconditional in dt; inner non-convergence is a
// hard error.
std::pair<GridFunction, InnerReport>
implicit_step(const GridSpec& grid, double dt, const GridFunction& u_m,
              const std::vector<double>& lambda_plus,
              const std::vector<double>& lambda_minus,
              const GridFunction& boundary_new,
              const SolverConfig& inner, int max_inner);

SolutionTrace solve_parabolic(const ProblemSpec& problem, const StepperConfig& config);

} // namespace tpo
