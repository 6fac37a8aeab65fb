// Projected Gauss-Seidel solver for the discrete two-phase membrane
// problem F^i[u] = 0.
#pragma once

#include <utility>

#include "tpo/problem.hpp"

namespace tpo {

struct SolverConfig {
    double tol_update = 1e-10;   // sup norm of one sweep's change
    double tol_residual = 1e-8;  // sup norm of the min-max residual
    int max_iterations = 0;      // 0 -> 100 * node count
};

struct EllipticSolveReport {
    int iterations = 0;
    double final_update_norm = 0.0;
    double final_residual_norm = 0.0;
    bool converged = false;
};

// Pointwise exact solve of F^i = 0 with the neighbor sum frozen:
//   u_i = max((S - dx^2 lp)/K, min((S + dx^2 lm)/K, 0)).
double pgs_update(double neighbor_sum, double lp, double lm, double dx, int K);

// Lexicographic Gauss-Seidel sweeps until both the update and residual
// sup norms drop below tolerance, or max_iterations sweeps elapse.
// Non-convergence is reported (converged=false), not thrown; a NaN
// appearing mid-sweep is a hard error.
std::pair<GridFunction, EllipticSolveReport>
solve_elliptic(const ProblemSpec& problem, const SolverConfig& config = {});

} // namespace tpo
