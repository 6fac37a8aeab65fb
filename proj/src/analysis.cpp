#include "tpo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tpo/operators.hpp"

namespace tpo {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<SmoothProbe> probe_family() {
    return {
        {"quadratic",
         [](double, double x) { return x * x; },
         [](double, double) { return 0.0; },
         [](double, double) { return 2.0; }},
        {"sine",
         [](double, double x) { return std::sin(kPi * x); },
         [](double, double) { return 0.0; },
         [](double, double x) { return -kPi * kPi * std::sin(kPi * x); }},
        {"linear_drift",
         [](double t, double x) { return t + x; },
         [](double, double) { return 1.0; },
         [](double, double) { return 0.0; }},
        {"exp_wave",
         [](double t, double x) { return std::exp(t - x); },
         [](double t, double x) { return std::exp(t - x); },
         [](double t, double x) { return std::exp(t - x); }},
        {"decaying_sine",
         [](double t, double x) { return std::exp(-t) * std::sin(kPi * x); },
         [](double t, double x) { return -std::exp(-t) * std::sin(kPi * x); },
         [](double t, double x) { return -kPi * kPi * std::exp(-t) * std::sin(kPi * x); }},
    };
}

SmoothProbe find_probe(const std::string& name) {
    for (auto& p : probe_family())
        if (p.name == name) return p;
    throw std::invalid_argument("analysis: unknown probe '" + name + "'");
}

namespace {

double fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& err,
                        double* fit_residual) {
    const int n = static_cast<int>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        lx[i] = std::log(h[i]);
        ly[i] = std::log(std::max(err[i], 1e-18));
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double rr = 0;
    for (int i = 0; i < n; ++i) {
        const double d = ly[i] - (slope * lx[i] + icpt);
        rr += d * d;
    }
    if (fit_residual) *fit_residual = std::sqrt(rr / n);
    return slope;
}

} // namespace

OrderEstimate consistency_order(const SmoothProbe& probe, OperatorKind kind,
                                double t0, double x0,
                                const std::vector<int>& node_levels,
                                double lambda_plus, double lambda_minus, double c) {
    if (node_levels.size() < 3)
        throw std::invalid_argument("analysis: consistency_order needs >= 3 grid levels");

    // continuum residual and branch gaps at the probe point
    const double phi = probe.f(t0, x0);
    const double lap = probe.lap(t0, x0);
    const double pt = (kind == OperatorKind::Parabolic) ? probe.ft(t0, x0) : 0.0;
    const double arg_min = pt - lap + lambda_plus;
    const double arg_inner = pt - lap - lambda_minus;
    const double target = std::min(arg_min, std::max(arg_inner, phi));

    double h_max = 0.0;
    for (int n : node_levels) h_max = std::max(h_max, 1.0 / (n - 1));
    const double trunc_est = h_max * h_max * std::max(1.0, std::abs(lap));
    const double gap_outer = std::abs(arg_min - std::max(arg_inner, phi));
    const double gap_inner = std::abs(arg_inner - phi);
    if (std::min(gap_outer, gap_inner) < 10.0 * trunc_est)
        throw std::invalid_argument("analysis: probe point is too close to a branch tie (gap " +
                                    std::to_string(std::min(gap_outer, gap_inner)) + ")");

    OrderEstimate est;
    for (int n : node_levels) {
        const double dx = 1.0 / (n - 1);
        const double node = x0 / dx;
        if (std::abs(node - std::round(node)) > 1e-9)
            throw std::invalid_argument("analysis: probe point must be a node at every level");
        const double lh = (2.0 * probe.f(t0, x0) - probe.f(t0, x0 - dx) - probe.f(t0, x0 + dx)) /
                          (dx * dx);
        if (kind == OperatorKind::Elliptic) {
            const double fh = std::min(lh + lambda_plus, std::max(lh - lambda_minus, phi));
            est.h.push_back(dx);
            est.error.push_back(std::abs(fh - target));
        } else {
            const double dt = c * dx * dx;
            const double phi_new = probe.f(t0 + dt, x0);
            const double st = phi_new - phi + dt * lh;
            const double s = std::min(st + dt * lambda_plus,
                                      std::max(st - dt * lambda_minus, dt * phi_new));
            est.h.push_back(dt);
            est.error.push_back(std::abs(s / dt - target));
        }
    }
    est.slope = fit_loglog_slope(est.h, est.error, &est.fit_residual);
    return est;
}

namespace {

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs,
                 std::vector<double>& x) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) return false;
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int cc = r + 1; cc < n; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return true;
}

} // namespace

GridFunction brute_force_elliptic(const ProblemSpec& problem) {
    const GridSpec& g = problem.grid;
    const auto& interior = g.interior_nodes();
    const int n = static_cast<int>(interior.size());
    if (n > 6)
        throw std::invalid_argument("analysis: brute-force oracle capped at 6 interior nodes");

    const double dx2 = g.spacing() * g.spacing();
    const int K = g.stencil_size();

    // dense index per interior node
    std::vector<int> dense(g.node_count(), -1);
    for (int k = 0; k < n; ++k) dense[interior[k]] = k;

    GridFunction base(g.node_count(), 0.0);
    for (int i = 0; i < g.node_count(); ++i) {
        if (g.is_interior(i)) continue;
        const auto c = g.coord(i);
        base[i] = problem.boundary(0.0, c[0], c[1]);
    }

    long total = 1;
    for (int k = 0; k < n; ++k) total *= 3;

    std::vector<GridFunction> solutions;
    for (long code = 0; code < total; ++code) {
        std::vector<int> branch(n);    // 0: Lh+lp=0, 1: Lh-lm=0, 2: u=0
        long cc = code;
        for (int k = 0; k < n; ++k) {
            branch[k] = static_cast<int>(cc % 3);
            cc /= 3;
        }

        std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
        std::vector<double> rhs(n, 0.0);
        for (int k = 0; k < n; ++k) {
            const int node = interior[k];
            if (branch[k] == 2) {
                A[k][k] = 1.0;
                rhs[k] = 0.0;
                continue;
            }
            A[k][k] = K;
            double bsum = 0.0;
            const auto nb = g.neighbors(node);
            for (int q = 0; q < K; ++q) {
                if (dense[nb[q]] >= 0)
                    A[k][dense[nb[q]]] -= 1.0;
                else
                    bsum += base[nb[q]];
            }
            rhs[k] = bsum + (branch[k] == 0 ? -dx2 * problem.lambda_plus[node]
                                            : dx2 * problem.lambda_minus[node]);
        }

        std::vector<double> x;
        if (!solve_dense(A, rhs, x)) continue;

        GridFunction u = base;
        double scale = 1.0;
        for (int k = 0; k < n; ++k) {
            u[interior[k]] = x[k];
            scale = std::max(scale, std::abs(x[k]));
        }
        const double tol = 1e-9 * scale;

        const GridFunction lh = lh_apply(g, u);
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            const int node = interior[k];
            const double lp = problem.lambda_plus[node];
            const double lm = problem.lambda_minus[node];
            switch (branch[k]) {
                case 0: ok = u[node] >= -tol; break;
                case 1: ok = u[node] <= tol; break;
                default:
                    ok = (lh[node] + lp >= -tol) && (lh[node] - lm <= tol);
            }
            if (ok)
                ok = std::abs(elliptic_residual_at(u[node], lh[node], lp, lm)) <= tol;
        }
        if (!ok) continue;

        bool duplicate = false;
        for (const auto& s : solutions) {
            double d = 0.0;
            for (int i = 0; i < g.node_count(); ++i) d = std::max(d, std::abs(s[i] - u[i]));
            if (d < 1e-8 * scale) { duplicate = true; break; }
        }
        if (!duplicate) solutions.push_back(std::move(u));
    }

    if (solutions.empty())
        throw std::runtime_error("analysis: oracle found no consistent branch assignment");
    if (solutions.size() > 1)
        throw std::runtime_error("analysis: oracle found multiple distinct solutions (" +
                                 std::to_string(solutions.size()) + "), uniqueness violated");
    return solutions.front();
}

SignSets classify_signs(const GridSpec& grid, const GridFunction& u, double tol_sign) {
    SignSets s;
    s.classes.resize(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i)
        s.classes[i] = u[i] > tol_sign ? 1 : (u[i] < -tol_sign ? -1 : 0);

    if (grid.dim() == 1) {
        const int n = grid.node_count();
        int i = 0;
        while (i < n - 1) {
            const int ci = s.classes[i];
            if (ci == 0) { ++i; continue; }
            // find the next nonzero class
            int j = i + 1;
            while (j < n && s.classes[j] == 0) ++j;
            if (j < n && s.classes[j] == -ci) {
                const double xi = grid.coord(i)[0];
                const double xj = grid.coord(j)[0];
                if (j == i + 1) {
                    // strict sign change between adjacent nodes: interpolate the root
                    s.boundary_points.push_back({xi + (xj - xi) * u[i] / (u[i] - u[j]), 0.0});
                } else {
                    // zero plateau between the phases: report its midpoint
                    const double xa = grid.coord(i + 1)[0];
                    const double xb = grid.coord(j - 1)[0];
                    s.boundary_points.push_back({0.5 * (xa + xb), 0.0});
                }
            }
            i = j;
        }
    } else {
        const int n = grid.nodes_per_dim();
        auto edge = [&](int a, int b) {
            if (s.classes[a] * s.classes[b] == -1) {
                const auto ca = grid.coord(a);
                const auto cb = grid.coord(b);
                const double w = u[a] / (u[a] - u[b]);
                s.boundary_points.push_back(
                    {ca[0] + (cb[0] - ca[0]) * w, ca[1] + (cb[1] - ca[1]) * w});
            }
        };
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const int id = iy * n + ix;
                if (ix + 1 < n) edge(id, id + 1);
                if (iy + 1 < n) edge(id, id + n);
            }
    }
    return s;
}

BandCheck residual_band_check(const GridSpec& grid, const GridFunction& u,
                              const std::vector<double>& lambda_plus,
                              const std::vector<double>& lambda_minus,
                              double tol, const GridFunction* ut) {
    BandCheck bc;
    const GridFunction lh = lh_apply(grid, u);
    for (int i : grid.interior_nodes()) {
        const double shifted = lh[i] + (ut ? (*ut)[i] : 0.0);
        const double viol = std::max(-(shifted + lambda_plus[i]) - tol,
                                     (shifted - lambda_minus[i]) - tol);
        if (viol > 0.0 && viol > bc.worst_violation) {
            bc.passed = false;
            bc.worst_node = i;
            bc.worst_violation = viol;
        }
    }
    return bc;
}

FuzzReport elliptic_monotonicity_fuzz(int trials, std::uint64_t seed, int K, double dx) {
    FuzzReport rep;
    rep.trials = trials;
    const double inv_dx2 = 1.0 / (dx * dx);
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> val(-10.0, 10.0);
        std::uniform_real_distribution<double> lam(0.01, 5.0);
        std::uniform_real_distribution<double> bump(0.0, 5.0);

        const double lp = lam(rng), lm = lam(rng);
        double ui = val(rng);
        std::vector<double> d(K);
        for (auto& x : d) x = val(rng);

        auto residual = [&](double u, const std::vector<double>& diffs) {
            double s = 0.0;
            for (double x : diffs) s += x;
            return elliptic_residual_at(u, s * inv_dx2, lp, lm);
        };

        const double before = residual(ui, d);
        std::uniform_int_distribution<int> pick(0, K);
        const int arg = pick(rng);
        const double delta = bump(rng);
        if (arg == 0)
            ui += delta;
        else
            d[arg - 1] += delta;
        const double after = residual(ui, d);

        if (after < before - 1e-12 * (1.0 + std::abs(before))) {
            ++rep.violations;
            if (rep.violations == 1) {
                rep.first_violation_seed = seed + static_cast<std::uint64_t>(t);
                std::ostringstream os;
                os << "elliptic trial " << t << ": arg " << arg << " +" << delta
                   << " dropped residual " << before << " -> " << after;
                rep.detail = os.str();
            }
        }
    }
    return rep;
}

FuzzReport parabolic_monotonicity_fuzz(int trials, std::uint64_t seed, int K, double c) {
    FuzzReport rep;
    rep.trials = trials;
    const double dt = 0.01;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
        std::uniform_real_distribution<double> val(-10.0, 10.0);
        std::uniform_real_distribution<double> lam(0.01, 5.0);
        std::uniform_real_distribution<double> bump(0.0, 5.0);

        const double lp = lam(rng), lm = lam(rng);
        const double w = val(rng);                 // shared new-level value
        double vj = val(rng);
        std::vector<double> vq(K);
        for (auto& x : vq) x = val(rng);

        // ordered pair: add nonnegative noise to the smaller vector
        double uj = vj + bump(rng);
        std::vector<double> uq = vq;
        for (auto& x : uq) x += bump(rng);

        auto scheme = [&](double center, const std::vector<double>& nbr) {
            double s = 0.0;
            for (double x : nbr) s += x;
            const double st = w - center * (1.0 - c * K) - c * s;
            return std::min(st + dt * lp, std::max(st - dt * lm, dt * w));
        };

        const double su = scheme(uj, uq);
        const double sv = scheme(vj, vq);
        if (su > sv + 1e-12 * (1.0 + std::abs(sv))) {
            ++rep.violations;
            if (rep.violations == 1) {
                rep.first_violation_seed = seed + static_cast<std::uint64_t>(t);
                std::ostringstream os;
                os << "parabolic trial " << t << ": c=" << c << " K=" << K << " S(u)=" << su
                   << " > S(v)=" << sv;
                rep.detail = os.str();
            }
        }
    }
    return rep;
}

} // namespace tpo
