#include "tpo/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace tpo {

GridFunction ProblemSpec::sample_boundary_onto(const GridFunction& u, double t) const {
    GridFunction out = u;
    for (int i = 0; i < grid.node_count(); ++i) {
        if (grid.is_interior(i)) continue;
        const auto c = grid.coord(i);
        out[i] = boundary(t, c[0], c[1]);
    }
    return out;
}

GridFunction ProblemSpec::initial_state() const {
    return sample_boundary_onto(initial, 0.0);
}

ProblemSpec make_problem(const GridSpec& grid,
                         std::optional<TimeGrid> time,
                         const SpaceFn& lambda_plus,
                         const SpaceFn& lambda_minus,
                         const SpaceFn& initial,
                         const SpaceTimeFn& boundary,
                         bool degenerate_mode) {
    if (time && !(time->horizon > 0.0 && time->steps >= 1))
        throw std::invalid_argument("problem: horizon must be > 0 and steps >= 1");

    ProblemSpec p;
    p.grid = grid;
    p.time = time;
    p.boundary = boundary;
    p.degenerate_mode = degenerate_mode;

    const int n = grid.node_count();
    p.lambda_plus.resize(n);
    p.lambda_minus.resize(n);
    p.initial.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto c = grid.coord(i);
        p.lambda_plus[i] = lambda_plus(c[0], c[1]);
        p.lambda_minus[i] = lambda_minus(c[0], c[1]);
        p.initial[i] = initial(c[0], c[1]);
        if (!std::isfinite(p.lambda_plus[i]) || !std::isfinite(p.lambda_minus[i]) ||
            !std::isfinite(p.initial[i]))
            throw std::invalid_argument("problem: non-finite sampled datum");
        if (p.lambda_plus[i] < 0.0 || p.lambda_minus[i] < 0.0)
            throw std::invalid_argument("problem: lambda+/- must be nonnegative");
        if (!degenerate_mode && (p.lambda_plus[i] == 0.0 || p.lambda_minus[i] == 0.0))
            throw std::invalid_argument(
                "problem: lambda+/- must be strictly positive (use degenerate mode for the heat reduction)");
    }

    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
        if (grid.is_interior(i)) continue;
        const auto c = grid.coord(i);
        const double hv = boundary(0.0, c[0], c[1]);
        if (!std::isfinite(hv))
            throw std::invalid_argument("problem: non-finite boundary datum");
        gap = std::max(gap, std::abs(p.initial[i] - hv));
    }
    p.compatibility_gap = gap;
    return p;
}

std::vector<BuiltinCase> builtin_cases() {
    return {
        {"fig1", 3.0, 1.0, 16.0, -8.0},
        {"fig2", 0.7, 0.2, 8.0, -4.0},
        {"fig3", 0.6, 0.6, 8.0, -4.0},
    };
}

ProblemSpec make_builtin(const std::string& name, int nodes, int time_steps, double horizon) {
    for (const auto& c : builtin_cases()) {
        if (c.name != name) continue;
        auto grid = GridSpec::build_1d(0.0, 1.0, nodes);
        std::optional<TimeGrid> time;
        if (time_steps > 0) time = TimeGrid{horizon, time_steps};
        const double lp = c.lambda_plus;
        const double lm = c.lambda_minus;
        const double s = c.g_slope;
        const double o = c.g_offset;
        auto g = [s, o](double x, double) { return s * x + o; };
        // constant-in-time boundary values equal to g at the endpoints
        auto h = [s, o](double, double x, double) { return s * x + o; };
        return make_problem(grid, time,
                            [lp](double, double) { return lp; },
                            [lm](double, double) { return lm; },
                            g, h);
    }
    throw std::invalid_argument("problem: unknown builtin case '" + name + "'");
}

} // namespace tpo
