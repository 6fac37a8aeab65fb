#include "tpo/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tpo/operators.hpp"

namespace tpo {

double pgs_update(double neighbor_sum, double lp, double lm, double dx, int K) {
    const double dx2 = dx * dx;
    const double lo = (neighbor_sum - dx2 * lp) / K;   // root of L_h u + lp = 0
    const double hi = (neighbor_sum + dx2 * lm) / K;   // root of L_h u - lm = 0
    return std::max(lo, std::min(hi, 0.0));
}

namespace {

GridFunction initial_guess(const ProblemSpec& p) {
    const GridSpec& g = p.grid;
    GridFunction u(g.node_count(), 0.0);
    // impose Dirichlet data
    for (int i = 0; i < g.node_count(); ++i) {
        if (g.is_interior(i)) continue;
        const auto c = g.coord(i);
        u[i] = p.boundary(0.0, c[0], c[1]);
    }
    if (g.dim() == 1) {
        // linear interpolation of the two endpoint values
        const int n = g.node_count();
        const double a = u[0], b = u[n - 1];
        for (int i = 1; i < n - 1; ++i)
            u[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    }
    return u;
}

} // namespace

std::pair<GridFunction, EllipticSolveReport>
solve_elliptic(const ProblemSpec& problem, const SolverConfig& config) {
    const GridSpec& g = problem.grid;
    const double dx = g.spacing();
    const int K = g.stencil_size();
    const int max_iter =
        config.max_iterations > 0 ? config.max_iterations : 100 * g.node_count();

    GridFunction u = initial_guess(problem);
    EllipticSolveReport rep;

    for (int it = 0; it < max_iter; ++it) {
        double update = 0.0;
        for (int i : g.interior_nodes()) {
            const double s = g.neighbor_sum(i, u);
            const double v = pgs_update(s, problem.lambda_plus[i], problem.lambda_minus[i], dx, K);
            if (!std::isfinite(v))
                throw std::runtime_error("elliptic: NaN during Gauss-Seidel sweep");
            update = std::max(update, std::abs(v - u[i]));
            u[i] = v;
        }
        rep.iterations = it + 1;
        rep.final_update_norm = update;
        if (update < config.tol_update) {
            rep.final_residual_norm =
                elliptic_residual(g, u, problem.lambda_plus, problem.lambda_minus).sup;
            if (rep.final_residual_norm < config.tol_residual) {
                rep.converged = true;
                return {std::move(u), rep};
            }
        }
    }
    rep.final_residual_norm =
        elliptic_residual(g, u, problem.lambda_plus, problem.lambda_minus).sup;
    rep.converged = false;
    return {std::move(u), rep};
}

} // namespace tpo
