// Problem definitions: coefficients, initial/boundary data, built-in cases.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tpo/grid.hpp"

namespace tpo {

struct TimeGrid {
    double horizon = 1.0;   // T
    int steps = 1;          // M
    double dt() const { return horizon / steps; }
};

using SpaceFn = std::function<double(double x, double y)>;
using SpaceTimeFn = std::function<double(double t, double x, double y)>;

struct ProblemSpec {
    GridSpec grid;
    std::optional<TimeGrid> time;       // absent for elliptic problems

    // Coefficients sampled once at the nodes; strictly positive unless the
    // caller opted into degenerate (heat-reduction) mode.
    std::vector<double> lambda_plus;
    std::vector<double> lambda_minus;
    std::vector<double> initial;        // g at all nodes
    SpaceTimeFn boundary;               // h(t, x, y), evaluated on boundary nodes

    bool degenerate_mode = false;

    // Sup over boundary nodes of |g - h(0,.)|; a mismatch is a warning,
    // not an error.
    double compatibility_gap = 0.0;

    GridFunction sample_boundary_onto(const GridFunction& u, double t) const;
    GridFunction initial_state() const; // g with boundary overwritten by h(0,.)
};

ProblemSpec make_problem(const GridSpec& grid,
                         std::optional<TimeGrid> time,
                         const SpaceFn& lambda_plus,
                         const SpaceFn& lambda_minus,
                         const SpaceFn& initial,
                         const SpaceTimeFn& boundary,
                         bool degenerate_mode = false);

struct BuiltinCase {
    std::string name;
    double lambda_plus;
    double lambda_minus;
    double g_slope;         // g(x) = g_slope*x + g_offset
    double g_offset;
};

// The three simulation cases: fig1 (3, 1, 16x-8), fig2 (0.7, 0.2, 8x-4),
// fig3 (0.6, 0.6, 8x-4). Boundary constants equal g at the endpoints.
std::vector<BuiltinCase> builtin_cases();

// Instantiate a built-in case on [0,1] with the given resolution;
// time_steps == 0 yields the elliptic (time-independent) version.
ProblemSpec make_builtin(const std::string& name, int nodes, int time_steps, double horizon = 1.0);

} // namespace tpo
