// Discrete operators: the stencil operator L_h, the elliptic min-max
// residual, the parabolic residual, and the CFL condition.
#pragma once

#include <vector>

#include "tpo/grid.hpp"

namespace tpo {

struct ResidualField {
    GridFunction values;    // per node, 0 on boundary nodes
    double sup = 0.0;       // sup over interior
};

// L_h u_i = sum_j (u_i - u_{i_j}) / dx^2 at interior nodes, 0 on the
// boundary. Sign convention: L_h approximates -Laplacian.
GridFunction lh_apply(const GridSpec& grid, const GridFunction& u);

// F^i[u] = min(L_h u_i + lp_i, max(L_h u_i - lm_i, u_i)).
ResidualField elliptic_residual(const GridSpec& grid, const GridFunction& u,
                                const std::vector<double>& lambda_plus,
                                const std::vector<double>& lambda_minus);

// Pointwise residual value from the scheme's arguments: node value and
// the neighbor differences (u_i - u_{i_j}) scaled by 1/dx^2.
double elliptic_residual_at(double u_i, double lh_u_i, double lp, double lm);

// Explicit-in-space parabolic residual:
//   S = min(St + dt*lp, max(St - dt*lm, dt*u_new_i)),
//   St = u_new_i - u_old_i + (dt/dx^2) * sum_j (u_old_i - u_old_j).
// A valid explicit step makes this identically zero.
ResidualField parabolic_residual(const GridSpec& grid, double dt,
                                 const GridFunction& u_old, const GridFunction& u_new,
                                 const std::vector<double>& lambda_plus,
                                 const std::vector<double>& lambda_minus);

// Backward-Euler variant: the stencil sum is taken at the new level.
ResidualField parabolic_residual_implicit(const GridSpec& grid, double dt,
                                          const GridFunction& u_old, const GridFunction& u_new,
                                          const std::vector<double>& lambda_plus,
                                          const std::vector<double>& lambda_minus);

struct CflVerdict {
    bool ok = false;
    double ratio = 0.0;     // dt/dx^2
    double bound = 0.0;     // 1/K
};

// Explicit-scheme stability: dt/dx^2 <= 1/K, exact comparison.
CflVerdict cfl_check(double dt, double dx, int stencil_size);

} // namespace tpo
