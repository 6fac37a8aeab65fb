#include "tpo/operators.hpp"

#include <algorithm>
#include <cmath>

namespace tpo {

GridFunction lh_apply(const GridSpec& grid, const GridFunction& u) {
    GridFunction out(grid.node_count(), 0.0);
    const double inv_dx2 = 1.0 / (grid.spacing() * grid.spacing());
    const int K = grid.stencil_size();
    for (int i : grid.interior_nodes())
        out[i] = (K * u[i] - grid.neighbor_sum(i, u)) * inv_dx2;
    return out;
}

double elliptic_residual_at(double u_i, double lh_u_i, double lp, double lm) {
    return std::min(lh_u_i + lp, std::max(lh_u_i - lm, u_i));
}

ResidualField elliptic_residual(const GridSpec& grid, const GridFunction& u,
                                const std::vector<double>& lambda_plus,
                                const std::vector<double>& lambda_minus) {
    ResidualField r;
    r.values.assign(grid.node_count(), 0.0);
    const GridFunction lh = lh_apply(grid, u);
    for (int i : grid.interior_nodes()) {
        r.values[i] = elliptic_residual_at(u[i], lh[i], lambda_plus[i], lambda_minus[i]);
        r.sup = std::max(r.sup, std::abs(r.values[i]));
    }
    return r;
}

namespace {

ResidualField parabolic_residual_impl(const GridSpec& grid, double dt,
                                      const GridFunction& u_old, const GridFunction& u_new,
                                      const GridFunction& stencil_level,
                                      const std::vector<double>& lambda_plus,
                                      const std::vector<double>& lambda_minus) {
    ResidualField r;
    r.values.assign(grid.node_count(), 0.0);
    const double c = dt / (grid.spacing() * grid.spacing());
    const int K = grid.stencil_size();
    for (int i : grid.interior_nodes()) {
        const double lsum = K * stencil_level[i] - grid.neighbor_sum(i, stencil_level);
        const double st = u_new[i] - u_old[i] + c * lsum;
        const double v = std::min(st + dt * lambda_plus[i],
                                  std::max(st - dt * lambda_minus[i], dt * u_new[i]));
        r.values[i] = v;
        r.sup = std::max(r.sup, std::abs(v));
    }
    return r;
}

} // namespace

ResidualField parabolic_residual(const GridSpec& grid, double dt,
                                 const GridFunction& u_old, const GridFunction& u_new,
                                 const std::vector<double>& lambda_plus,
                                 const std::vector<double>& lambda_minus) {
    return parabolic_residual_impl(grid, dt, u_old, u_new, u_old, lambda_plus, lambda_minus);
}

ResidualField parabolic_residual_implicit(const GridSpec& grid, double dt,
                                          const GridFunction& u_old, const GridFunction& u_new,
                                          const std::vector<double>& lambda_plus,
                                          const std::vector<double>& lambda_minus) {
    return parabolic_residual_impl(grid, dt, u_old, u_new, u_new, lambda_plus, lambda_minus);
}

CflVerdict cfl_check(double dt, double dx, int stencil_size) {
    CflVerdict v;
    v.ratio = dt / (dx * dx);
    v.bound = 1.0 / stencil_size;
    v.ok = v.ratio <= v.bound;
    return v;
}

} // namespace tpo
