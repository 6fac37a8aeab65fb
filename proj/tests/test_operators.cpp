#include "doctest.h"

#include <cmath>

#include "tpo/analysis.hpp"
#include "tpo/operators.hpp"

using namespace tpo;

TEST_CASE("stencil operator vanishes on constants") {
    auto g = GridSpec::build_1d(0.0, 1.0, 9);
    GridFunction u(g.node_count(), 3.7);
    auto lh = lh_apply(g, u);
    for (int i : g.interior_nodes()) CHECK(lh[i] == doctest::Approx(0.0));
}

TEST_CASE("stencil operator is exact on quadratics") {
    // 1D: u = x^2 on three nodes, dx = 0.5
    auto g1 = GridSpec::build_1d(0.0, 1.0, 3);
    GridFunction u1 = {0.0, 0.25, 1.0};
    CHECK(lh_apply(g1, u1)[1] == doctest::Approx(-2.0));

    // 2D: u = x^2 + y^2 gives -4 (minus the Laplacian)
    auto g2 = GridSpec::build_2d(0.0, 1.0, 0.0, 1.0, 5);
    GridFunction u2(g2.node_count());
    for (int i = 0; i < g2.node_count(); ++i) {
        auto c = g2.coord(i);
        u2[i] = c[0] * c[0] + c[1] * c[1];
    }
    for (int i : g2.interior_nodes()) CHECK(lh_apply(g2, u2)[i] == doctest::Approx(-4.0));
}

TEST_CASE("elliptic residual hand values") {
    std::vector<double> one(3, 1.0);

    // zero function solves the scheme
    auto g = GridSpec::build_1d(0.0, 1.0, 3);
    GridFunction zero(3, 0.0);
    auto r0 = elliptic_residual(g, zero, one, one);
    CHECK(r0.sup == doctest::Approx(0.0));
    CHECK(r0.values[0] == 0.0);   // boundary entries defined as 0

    // dx=1, u_i=1 with zero neighbors: L_h u = 2, residual = min(3, max(1, 1)) = 1
    auto g1 = GridSpec::build_1d(0.0, 2.0, 3);
    GridFunction u = {0.0, 1.0, 0.0};
    auto r1 = elliptic_residual(g1, u, one, one);
    CHECK(r1.values[1] == doctest::Approx(1.0));
}

TEST_CASE("parabolic residual hand value") {
    // nodes (-8, 2, 8), dx=0.5, dt=0.1, lambda+ = 3, lambda- = 1, new center 0.1
    auto g = GridSpec::build_1d(0.0, 1.0, 3);
    GridFunction u_old = {-8.0, 2.0, 8.0};
    GridFunction u_new = {-8.0, 0.1, 8.0};
    std::vector<double> lp(3, 3.0), lm(3, 1.0);
    auto r = parabolic_residual(g, 0.1, u_old, u_new, lp, lm);
    // S~ = 0.1 - 2 + 0.4*4 = -0.3; min(-0.3+0.3, max(-0.4, 0.01)) = 0
    CHECK(r.values[1] == doctest::Approx(0.0));
}

TEST_CASE("parabolic residual vanishes on a forward-Euler heat step") {
    auto g = GridSpec::build_1d(0.0, 1.0, 9);
    const double dt = 0.4 * g.spacing() * g.spacing();
    const double c = dt / (g.spacing() * g.spacing());
    GridFunction u(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) u[i] = std::sin(3.14159 * g.coord(i)[0]);
    GridFunction un = u;
    for (int i : g.interior_nodes())
        un[i] = u[i] - c * (2.0 * u[i] - g.neighbor_sum(i, u));
    std::vector<double> zero(g.node_count(), 0.0);
    CHECK(parabolic_residual(g, dt, u, un, zero, zero).sup == doctest::Approx(0.0));
}

TEST_CASE("CFL verdicts") {
    CHECK(cfl_check(0.125, 0.5, 2).ok);          // ratio 0.5 at the bound
    CHECK_FALSE(cfl_check(0.075, 0.5, 4).ok);    // ratio 0.3 > 1/4
    CHECK_FALSE(cfl_check(0.1275, 0.5, 2).ok);   // ratio 0.51
}

TEST_CASE("degenerate ellipticity: residual nondecreasing in every argument") {
    auto rep = elliptic_monotonicity_fuzz(500, 7, 2, 0.25);
    CHECK(rep.violations == 0);
    rep = elliptic_monotonicity_fuzz(500, 7, 4, 0.1);
    CHECK(rep.violations == 0);
}

TEST_CASE("scheme monotone at the CFL boundary, violated past it") {
    CHECK(parabolic_monotonicity_fuzz(500, 11, 2, 0.5).violations == 0);
    CHECK(parabolic_monotonicity_fuzz(500, 11, 4, 0.25).violations == 0);
    auto bad = parabolic_monotonicity_fuzz(500, 11, 2, 0.6);
    CHECK(bad.violations >= 1);
    CHECK_FALSE(bad.detail.empty());
}
