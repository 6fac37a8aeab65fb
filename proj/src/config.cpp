#include "tpo/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "tpo/expr.hpp"

namespace tpo {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& block,
                    const std::set<std::string>& known) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + block);
}

template <typename T>
T get_required(const json& obj, const std::string& block, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("config: missing key '" + key + "' in " + block);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for '" + key + "' in " + block);
    }
}

template <typename T>
T get_optional(const json& obj, const std::string& block, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for '" + key + "' in " + block);
    }
}

Expr parse_expr_field(const json& obj, const std::string& block, const std::string& key) {
    const auto text = get_required<std::string>(obj, block, key);
    try {
        return Expr::parse(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: field '" + key + "' in " + block + ": " + e.what());
    }
}

ProblemSpec parse_problem_block(const json& pb, json& resolved) {
    if (pb.contains("builtin")) {
        reject_unknown(pb, "problem", {"builtin", "nodes_per_dim", "steps", "T"});
        const auto name = get_required<std::string>(pb, "problem", "builtin");
        const int nodes = get_optional<int>(pb, "problem", "nodes_per_dim", 201);
        const int steps = get_optional<int>(pb, "problem", "steps", 250);
        const double horizon = get_optional<double>(pb, "problem", "T", 1.0);
        resolved["problem"] = {
            {"builtin", name}, {"nodes_per_dim", nodes}, {"steps", steps}, {"T", horizon}};
        try {
            return make_builtin(name, nodes, steps, horizon);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    reject_unknown(pb, "problem",
                   {"dim", "bounds", "nodes_per_dim", "T", "steps", "lambda_plus",
                    "lambda_minus", "g", "h", "degenerate_ok"});
    const int dim = get_optional<int>(pb, "problem", "dim", 1);
    const int nodes = get_required<int>(pb, "problem", "nodes_per_dim");
    std::vector<Bounds> bounds;
    if (pb.contains("bounds")) {
        const auto& jb = pb.at("bounds");
        if (!jb.is_array())
            throw ConfigError("config: 'bounds' must be an array of [lo, hi] pairs");
        for (const auto& pair : jb) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("config: each bounds entry must be [lo, hi]");
            bounds.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    } else {
        for (int a = 0; a < dim; ++a) bounds.push_back({0.0, 1.0});
    }

    std::optional<TimeGrid> time;
    const bool has_T = pb.contains("T"), has_steps = pb.contains("steps");
    if (has_T != has_steps)
        throw ConfigError("config: 'T' and 'steps' must be given together");
    if (has_T)
        time = TimeGrid{get_required<double>(pb, "problem", "T"),
                        get_required<int>(pb, "problem", "steps")};

    const Expr lp = parse_expr_field(pb, "problem", "lambda_plus");
    const Expr lm = parse_expr_field(pb, "problem", "lambda_minus");
    const Expr g = parse_expr_field(pb, "problem", "g");
    const Expr h = parse_expr_field(pb, "problem", "h");
    const bool degenerate = get_optional<bool>(pb, "problem", "degenerate_ok", false);

    resolved["problem"] = {{"dim", dim},
                           {"nodes_per_dim", nodes},
                           {"lambda_plus", lp.text()},
                           {"lambda_minus", lm.text()},
                           {"g", g.text()},
                           {"h", h.text()},
                           {"degenerate_ok", degenerate}};
    {
        json jb = json::array();
        for (const auto& b : bounds) jb.push_back({b.lo, b.hi});
        resolved["problem"]["bounds"] = jb;
    }
    if (time) {
        resolved["problem"]["T"] = time->horizon;
        resolved["problem"]["steps"] = time->steps;
    }

    try {
        const GridSpec grid = GridSpec::build(dim, bounds, nodes);
        return make_problem(
            grid, time,
            [lp](double x, double y) { return lp.eval(x, y); },
            [lm](double x, double y) { return lm.eval(x, y); },
            [g](double x, double y) { return g.eval(x, y); },
            [h](double t, double x, double y) { return h.eval(x, y, t); },
            degenerate);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void parse_solver_obj(const json& sb, StepperConfig& stepper, SolverConfig& elliptic,
                      json* resolved) {
    reject_unknown(sb, "solver",
                   {"mode", "tol_update", "tol_residual", "max_iterations", "max_inner",
                    "cfl_safety", "snapshot_stride"});
    const auto mode = get_optional<std::string>(sb, "solver", "mode", "explicit");
    if (mode == "explicit")
        stepper.mode = SteppingMode::Explicit;
    else if (mode == "implicit")
        stepper.mode = SteppingMode::Implicit;
    else
        throw ConfigError("config: 'mode' must be \"explicit\" or \"implicit\"");

    SolverConfig tol;
    tol.tol_update = get_optional<double>(sb, "solver", "tol_update", tol.tol_update);
    tol.tol_residual = get_optional<double>(sb, "solver", "tol_residual", tol.tol_residual);
    tol.max_iterations = get_optional<int>(sb, "solver", "max_iterations", 0);
    elliptic = tol;
    stepper.inner = tol;
    stepper.max_inner = get_optional<int>(sb, "solver", "max_inner", 0);
    stepper.cfl_safety = get_optional<double>(sb, "solver", "cfl_safety", 0.9);
    stepper.snapshot_stride = get_optional<int>(sb, "solver", "snapshot_stride", 0);
    if (stepper.cfl_safety <= 0.0 || stepper.cfl_safety > 1.0)
        throw ConfigError("config: 'cfl_safety' must lie in (0, 1]");

    if (resolved)
        (*resolved)["solver"] = {{"mode", mode},
                                 {"tol_update", tol.tol_update},
                                 {"tol_residual", tol.tol_residual},
                                 {"max_iterations", tol.max_iterations},
                                 {"max_inner", stepper.max_inner},
                                 {"cfl_safety", stepper.cfl_safety},
                                 {"snapshot_stride", stepper.snapshot_stride}};
}

const std::set<std::string> kArtifacts = {"solution", "signs", "free_boundary",
                                          "diagnostics", "manifest"};

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(doc, "top level", {"problem", "solver", "output"});
    if (!doc.contains("problem")) throw ConfigError("config: missing 'problem' block");

    RunConfig rc;
    json resolved;
    rc.problem = parse_problem_block(doc.at("problem"), resolved);

    if (doc.contains("solver"))
        parse_solver_obj(doc.at("solver"), rc.stepper, rc.elliptic, &resolved);
    else
        resolved["solver"] = {{"mode", "explicit"}};

    if (doc.contains("output")) {
        const auto& ob = doc.at("output");
        reject_unknown(ob, "output", {"dir", "artifacts"});
        rc.output.dir = get_optional<std::string>(ob, "output", "dir", "out");
        if (ob.contains("artifacts")) {
            for (const auto& a : ob.at("artifacts")) {
                const auto name = a.get<std::string>();
                if (!kArtifacts.count(name))
                    throw ConfigError("config: unknown artifact '" + name + "'");
                rc.output.artifacts.push_back(name);
            }
        }
    }
    if (rc.output.artifacts.empty())
        rc.output.artifacts.assign(kArtifacts.begin(), kArtifacts.end());
    resolved["output"] = {{"dir", rc.output.dir}, {"artifacts", rc.output.artifacts}};

    rc.resolved_json = resolved.dump(2);
    return rc;
}

void parse_solver_block(const std::string& json_text, StepperConfig& stepper,
                        SolverConfig& elliptic) {
    stepper = StepperConfig{};
    elliptic = SolverConfig{};
    if (json_text.empty()) return;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid solver JSON: ") + e.what());
    }
    if (doc.is_null()) return;
    if (!doc.is_object()) throw ConfigError("config: solver block must be an object");
    parse_solver_obj(doc, stepper, elliptic, nullptr);
}

} // namespace tpo
