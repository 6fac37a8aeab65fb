#include "tpo/study.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "tpo/analysis.hpp"
#include "tpo/config.hpp"
#include "tpo/parabolic.hpp"

namespace tpo {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

void fit_slope(StudyResult& r) {
    const int n = static_cast<int>(r.h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        lx[i] = std::log(r.h[i]);
        ly[i] = std::log(std::max(r.error[i], 1e-18));
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
    }
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - r.slope * sx) / n;
    double rr = 0;
    for (int i = 0; i < n; ++i) {
        const double d = ly[i] - (r.slope * lx[i] + icpt);
        rr += d * d;
    }
    r.fit_residual = std::sqrt(rr / n);
}

ProblemSpec heat_problem(int nodes, double horizon, int steps) {
    GridSpec grid = GridSpec::build_1d(0.0, 1.0, nodes);
    return make_problem(grid, TimeGrid{horizon, steps},
                        [](double, double) { return 0.0; },
                        [](double, double) { return 0.0; },
                        [](double x, double) { return std::sin(kPi * x); },
                        [](double, double, double) { return 0.0; },
                        /*degenerate_mode=*/true);
}

double final_sup_error(const SolutionTrace& trace, const GridSpec& grid, double decay) {
    const GridFunction& u = trace.snapshots.back().u;
    double err = 0.0;
    for (int i = 0; i < grid.node_count(); ++i) {
        const double x = grid.coord(i)[0];
        err = std::max(err, std::abs(u[i] - decay * std::sin(kPi * x)));
    }
    return err;
}

} // namespace

StudyResult run_study(const std::string& config_json) {
    json doc;
    try {
        doc = json::parse(config_json);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("study"))
        throw ConfigError("config: missing 'study' block");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "study" && it.key() != "output")
            throw ConfigError("config: unknown key '" + it.key() + "' at top level");

    const json& sb = doc.at("study");
    static const std::set<std::string> known = {"kind", "levels", "c", "T", "nodes_per_dim",
                                               "probe", "x0", "t0", "lambda_plus",
                                               "lambda_minus"};
    for (auto it = sb.begin(); it != sb.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in study");

    StudyResult r;
    r.kind = sb.value("kind", "");
    r.output_dir = doc.contains("output") ? doc.at("output").value("dir", "out") : "out";

    std::vector<int> levels;
    if (sb.contains("levels")) levels = sb.at("levels").get<std::vector<int>>();
    if (levels.size() < 3)
        throw ConfigError("config: a study needs at least 3 levels");

    if (r.kind == "heat_space") {
        const double c = sb.value("c", 0.4);
        const double T = sb.value("T", 0.1);
        const double decay = std::exp(-kPi * kPi * T);
        for (int nodes : levels) {
            const double dx = 1.0 / (nodes - 1);
            const int steps = static_cast<int>(std::ceil(T / (c * dx * dx)));
            ProblemSpec p = heat_problem(nodes, T, steps);
            StepperConfig cfg;
            cfg.mode = SteppingMode::Explicit;
            SolutionTrace tr = solve_parabolic(p, cfg);
            r.h.push_back(dx);
            r.error.push_back(final_sup_error(tr, p.grid, decay));
        }
    } else if (r.kind == "heat_time") {
        const int nodes = sb.value("nodes_per_dim", 41);
        const double T = sb.value("T", 0.1);
        const double dx = 1.0 / (nodes - 1);
        // sin(pi x) is an exact eigenvector of the discrete operator; its
        // semi-discrete decay rate isolates the time-stepping error.
        const double mu = (2.0 - 2.0 * std::cos(kPi * dx)) / (dx * dx);
        const double decay = std::exp(-mu * T);
        for (int steps : levels) {
            ProblemSpec p = heat_problem(nodes, T, steps);
            StepperConfig cfg;
            cfg.mode = SteppingMode::Implicit;
            cfg.inner.tol_update = 1e-13;
            cfg.inner.tol_residual = 1e-11;
            SolutionTrace tr = solve_parabolic(p, cfg);
            r.h.push_back(T / steps);
            r.error.push_back(final_sup_error(tr, p.grid, decay));
        }
    } else if (r.kind == "consistency_elliptic" || r.kind == "consistency_parabolic") {
        const bool parabolic = r.kind == "consistency_parabolic";
        const SmoothProbe probe = find_probe(sb.value("probe", parabolic ? "exp_wave" : "sine"));
        const double x0 = sb.value("x0", 0.5);
        const double t0 = sb.value("t0", parabolic ? 1.0 : 0.0);
        const double lp = sb.value("lambda_plus", 1.0);
        const double lm = sb.value("lambda_minus", 1.0);
        const double c = sb.value("c", 0.25);
        OrderEstimate est;
        try {
            est = consistency_order(probe,
                                    parabolic ? OperatorKind::Parabolic : OperatorKind::Elliptic,
                                    t0, x0, levels, lp, lm, c);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        r.h = est.h;
        r.error = est.error;
        r.slope = est.slope;
        r.fit_residual = est.fit_residual;
        return r;
    } else {
        throw ConfigError("config: unknown study kind '" + r.kind + "'");
    }
    fit_slope(r);
    return r;
}

std::string study_report_json(const StudyResult& r) {
    json out = {
        {"kind", r.kind},
        {"levels", json::array()},
        {"slope", r.slope},
        {"fit_residual", r.fit_residual},
    };
    for (size_t i = 0; i < r.h.size(); ++i)
        out["levels"].push_back({{"h", r.h[i]}, {"error", r.error[i]}});
    return out.dump(2);
}

} // namespace tpo
