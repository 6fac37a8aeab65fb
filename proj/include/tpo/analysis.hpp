// Verification instruments: consistency-order estimation, brute-force
// oracle, sign-set extraction, and property-test drivers for the
// monotone-scheme hypotheses.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tpo/problem.hpp"

namespace tpo {

// Closed-form probe with hand-coded derivatives; no numerical
// differentiation feeds the consistency estimator.
struct SmoothProbe {
    std::string name;
    std::function<double(double t, double x)> f;
    std::function<double(double t, double x)> ft;
    std::function<double(double t, double x)> lap;   // u_xx
};

// Built-in 1D probe family (polynomials, sin/exp products).
std::vector<SmoothProbe> probe_family();
SmoothProbe find_probe(const std::string& name);

struct OrderEstimate {
    std::vector<double> h;       // dx (elliptic) or dt (parabolic)
    std::vector<double> error;
    double slope = 0.0;          // least-squares fit on log-log
    double fit_residual = 0.0;   // rms residual of the fit
};

enum class OperatorKind { Elliptic, Parabolic };

// Error of the discrete min-max residual against its continuum limit at a
// probe point, over a sequence of grid levels. The probe point must have a
// strictly active min/max branch; branch-tie points are rejected. For the
// parabolic kind, dt is tied to dx^2 by the fixed diffusion number c.
OrderEstimate consistency_order(const SmoothProbe& probe, OperatorKind kind,
                                double t0, double x0,
                                const std::vector<int>& node_levels,
                                double lambda_plus, double lambda_minus,
                                double c = 0.25);

// Exhaustive active-set oracle for the elliptic scheme: enumerates the
// three branch choices per interior node, solves each linear system, and
// returns the unique solution consistent with all branch inequalities.
// Refuses grids with more than 6 interior nodes.
GridFunction brute_force_elliptic(const ProblemSpec& problem);

struct SignSets {
    std::vector<int> classes;                       // +1 / -1 / 0 per node
    std::vector<std::array<double, 2>> boundary_points;   // 1D: {x, 0}; 2D: {x, y}
};

SignSets classify_signs(const GridSpec& grid, const GridFunction& u, double tol_sign);

struct BandCheck {
    bool passed = true;
    int worst_node = -1;
    double worst_violation = 0.0;
};

// Discrete residual band: L_h u_i + ut_i + lp_i >= -tol and
// L_h u_i + ut_i - lm_i <= tol at every interior node. Pass ut = nullptr
// for the elliptic case.
BandCheck residual_band_check(const GridSpec& grid, const GridFunction& u,
                              const std::vector<double>& lambda_plus,
                              const std::vector<double>& lambda_minus,
                              double tol, const GridFunction* ut = nullptr);

struct FuzzReport {
    int trials = 0;
    int violations = 0;
    std::uint64_t first_violation_seed = 0;
    std::string detail;          // reproducer description of the first violation
};

// Randomized single-argument-increase trials on the elliptic residual
// F^i(u_i, d_1..d_K): the residual must never decrease.
FuzzReport elliptic_monotonicity_fuzz(int trials, std::uint64_t seed, int K, double dx);

// Randomized ordered pairs (u~ >= v~ at level m, equal new-level value):
// S(u~) <= S(v~) must hold whenever c*K <= 1. Pass c > 1/K to confirm the
// harness detects the failure mode.
FuzzReport parabolic_monotonicity_fuzz(int trials, std::uint64_t seed, int K, double c);

} // namespace tpo
