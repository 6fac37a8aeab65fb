#include "tpo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tpo/analysis.hpp"
#include "tpo/elliptic.hpp"
#include "tpo/operators.hpp"
#include "tpo/parabolic.hpp"

namespace tpo {

namespace {
constexpr double kPi = std::numbers::pi;
}

ProblemSpec random_problem(std::mt19937_64& rng, int dim, int nodes, bool with_time,
                           double cfl_fraction) {
    std::uniform_real_distribution<double> lam(0.1, 4.0);
    std::uniform_real_distribution<double> amp(-12.0, 12.0);
    std::uniform_real_distribution<double> shift(0.2, 0.8);
    std::uniform_int_distribution<int> nsteps(3, 10);

    const double lp = lam(rng), lm = lam(rng);
    const double a = amp(rng), b = amp(rng), r = shift(rng);

    GridSpec grid = (dim == 1) ? GridSpec::build_1d(0.0, 1.0, nodes)
                               : GridSpec::build_2d(0.0, 1.0, 0.0, 1.0, nodes);

    auto g = [a, b, r, dim](double x, double y) {
        const double s = (dim == 1) ? x : 0.5 * (x + y);
        return a * (s - r) + b * std::sin(kPi * s);
    };

    std::optional<TimeGrid> time;
    if (with_time) {
        const int K = grid.stencil_size();
        const double dt = cfl_fraction * grid.spacing() * grid.spacing() / K;
        const int steps = nsteps(rng);
        time = TimeGrid{dt * steps, steps};
    }
    return make_problem(grid, time,
                        [lp](double, double) { return lp; },
                        [lm](double, double) { return lm; },
                        g, [g](double, double x, double y) { return g(x, y); });
}

ProblemSpec random_tiny_elliptic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nn(3, 8);   // 1..6 interior nodes
    std::uniform_real_distribution<double> lam(0.1, 4.0);
    std::uniform_real_distribution<double> bval(-10.0, 10.0);

    const int nodes = nn(rng);
    const double lp = lam(rng), lm = lam(rng);
    const double left = bval(rng), right = bval(rng);
    GridSpec grid = GridSpec::build_1d(0.0, 1.0, nodes);
    auto g = [left, right](double x, double) { return left + (right - left) * x; };
    return make_problem(grid, std::nullopt,
                        [lp](double, double) { return lp; },
                        [lm](double, double) { return lm; },
                        g, [g](double, double x, double y) { return g(x, y); });
}

namespace {

struct Line {
    bool ok;
    std::string text;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Line check_explicit_exactness(std::uint64_t seed, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed ^ (0x51e9ULL + t));
        const int dim = (t % 2) + 1;
        const int nodes = (dim == 1) ? 9 + static_cast<int>(rng() % 20) : 5 + static_cast<int>(rng() % 6);
        ProblemSpec p = random_problem(rng, dim, nodes, true);
        const double dt = p.time->dt();
        GridFunction u = p.initial_state();
        GridFunction bnd = p.sample_boundary_onto(u, dt);
        GridFunction un = explicit_step(p.grid, dt, u, p.lambda_plus, p.lambda_minus, bnd);
        const double res = parabolic_residual(p.grid, dt, u, un, p.lambda_plus, p.lambda_minus).sup;
        const double rel = res / (1.0 + sup_norm(un));
        worst = std::max(worst, rel);
    }
    const bool ok = worst <= 1e-12;
    return {ok, "explicit-step-exactness: trials=" + std::to_string(trials) +
                    " worst_scaled_residual=" + fmt(worst) + " bound=1e-12"};
}

Line check_oracle(std::uint64_t seed, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed ^ (0x07acULL + 31 * t));
        ProblemSpec p = random_tiny_elliptic(rng);
        GridFunction expected = brute_force_elliptic(p);
        SolverConfig cfg;
        cfg.tol_update = 1e-14;
        cfg.tol_residual = 1e-12;
        cfg.max_iterations = 200000;
        auto [u, rep] = solve_elliptic(p, cfg);
        double gap = 0.0;
        for (size_t i = 0; i < u.size(); ++i) gap = std::max(gap, std::abs(u[i] - expected[i]));
        worst = std::max(worst, gap);
    }
    const bool ok = worst <= 1e-10;
    return {ok, "oracle-equivalence: trials=" + std::to_string(trials) + " worst_gap=" +
                    fmt(worst) + " bound=1e-10"};
}

Line check_comparison(std::uint64_t seed, int trials, SteppingMode mode) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed ^ (0xc0deULL + 17 * t));
        const int nodes = 9 + static_cast<int>(rng() % 12);
        ProblemSpec p1 = random_problem(rng, 1, nodes, true);
        std::uniform_real_distribution<double> drop(0.0, 4.0);
        const double d0 = drop(rng), d1 = drop(rng);

        // lower ordered data: g2 = g1 - (d0 + d1 sin^2(pi x)), h2 likewise
        ProblemSpec p2 = p1;
        for (int i = 0; i < p1.grid.node_count(); ++i) {
            const double x = p1.grid.coord(i)[0];
            const double s = std::sin(kPi * x);
            p2.initial[i] -= d0 + d1 * s * s;
        }
        auto h1 = p1.boundary;
        p2.boundary = [h1, d0, d1](double tt, double x, double y) {
            const double s = std::sin(kPi * x);
            return h1(tt, x, y) - (d0 + d1 * s * s);
        };

        StepperConfig cfg;
        cfg.mode = mode;
        cfg.snapshot_stride = 1;
        SolutionTrace tr1 = solve_parabolic(p1, cfg);
        SolutionTrace tr2 = solve_parabolic(p2, cfg);
        for (size_t k = 0; k < tr1.snapshots.size(); ++k)
            for (int i = 0; i < p1.grid.node_count(); ++i)
                worst = std::max(worst, tr2.snapshots[k].u[i] - tr1.snapshots[k].u[i]);
    }
    const bool ok = worst <= 1e-8;
    return {ok, std::string("comparison-principle-") +
                    (mode == SteppingMode::Explicit ? "explicit" : "implicit") +
                    ": trials=" + std::to_string(trials) + " worst_inversion=" + fmt(worst) +
                    " bound=1e-8"};
}

Line check_band_builtins(std::uint64_t) {
    double worst = 0.0;
    for (const auto& c : builtin_cases()) {
        ProblemSpec p = make_builtin(c.name, 101, 0);
        SolverConfig cfg;
        cfg.max_iterations = 400000;
        auto [u, rep] = solve_elliptic(p, cfg);
        if (!rep.converged) return {false, "residual-band-builtins: " + c.name + " did not converge"};
        BandCheck bc = residual_band_check(p.grid, u, p.lambda_plus, p.lambda_minus,
                                           10.0 * cfg.tol_residual);
        if (!bc.passed) worst = std::max(worst, bc.worst_violation);
    }
    return {worst == 0.0, "residual-band-builtins: cases=3 worst_violation=" + fmt(worst)};
}

} // namespace

VerifyResult run_verification(const VerifyOptions& opt) {
    std::vector<Line> lines;

    {
        FuzzReport r = elliptic_monotonicity_fuzz(opt.fuzz_trials, opt.seed, 2, 0.1);
        lines.push_back({r.violations == 0,
                         "elliptic-monotonicity: trials=" + std::to_string(r.trials) +
                             " violations=" + std::to_string(r.violations) +
                             (r.violations ? " first_seed=" + std::to_string(r.first_violation_seed)
                                           : "")});
    }
    for (int K : {2, 4}) {
        FuzzReport r = parabolic_monotonicity_fuzz(opt.fuzz_trials, opt.seed + K, K, 1.0 / K);
        lines.push_back({r.violations == 0,
                         "parabolic-monotonicity-K" + std::to_string(K) +
                             ": trials=" + std::to_string(r.trials) + " c=" + fmt(1.0 / K) +
                             " violations=" + std::to_string(r.violations) +
                             (r.violations ? " first_seed=" + std::to_string(r.first_violation_seed)
                                           : "")});
    }
    {
        // negative control: past the CFL bound the harness must find violations
        FuzzReport r = parabolic_monotonicity_fuzz(opt.fuzz_trials, opt.seed + 99, 2, 0.6);
        lines.push_back({r.violations >= 1,
                         "cfl-violation-detected: trials=" + std::to_string(r.trials) +
                             " c=0.6 violations=" + std::to_string(r.violations) +
                             " (expected >= 1)"});
    }
    lines.push_back(check_explicit_exactness(opt.seed, opt.step_trials));
    lines.push_back(check_oracle(opt.seed, opt.oracle_trials));
    lines.push_back(check_comparison(opt.seed, opt.comparison_trials, SteppingMode::Explicit));
    lines.push_back(check_comparison(opt.seed, opt.comparison_trials, SteppingMode::Implicit));
    lines.push_back(check_band_builtins(opt.seed));

    VerifyResult out;
    out.passed = true;
    std::ostringstream os;
    os << "verification report (seed=" << opt.seed << ")\n";
    for (const auto& l : lines) {
        os << (l.ok ? "[PASS] " : "[FAIL] ") << l.text << "\n";
        out.passed = out.passed && l.ok;
    }
    os << "overall: " << (out.passed ? "PASS" : "FAIL") << "\n";
    out.report = os.str();
    return out;
}

} // namespace tpo
