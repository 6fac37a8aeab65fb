// Command-line front end. Talks to the solver library exclusively through
// the C API in twophase.h; file ingestion and CSV emission live here.
#include <cstdio>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twophase.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCsvSchema = "# tpo-csv-v1";

struct CliError {
    int exit_code;
    std::string message;
};

int status_exit_code(tpo_status s) { return s == TPO_ERR_CONFIG ? 2 : 1; }

[[noreturn]] void fail_status(tpo_status s, const std::string& context) {
    throw CliError{status_exit_code(s), context + ": " + tpo_last_error()};
}

json load_config(const std::string& path, const std::string& out_override,
                 const std::string& mode_override) {
    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open config file: " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    json doc = json::parse(ss.str(), nullptr, false);
    if (doc.is_discarded()) throw CliError{2, "config is not valid JSON: " + path};
    if (!out_override.empty()) doc["output"]["dir"] = out_override;
    if (!mode_override.empty()) doc["solver"]["mode"] = mode_override;
    return doc;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct ProblemHandle {
    tpo_problem* p = nullptr;
    ~ProblemHandle() { tpo_problem_free(p); }
};

bool wants(const json& doc, const std::string& artifact) {
    if (!doc.contains("output") || !doc.at("output").contains("artifacts")) return true;
    for (const auto& a : doc.at("output").at("artifacts"))
        if (a == artifact) return true;
    return false;
}

fs::path output_dir(const json& doc) {
    std::string dir = "out";
    if (doc.contains("output") && doc.at("output").contains("dir"))
        dir = doc.at("output").at("dir").get<std::string>();
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{1, "cannot write " + path.string()};
    out << content;
}

void write_manifest(const fs::path& dir, const json& doc, unsigned long long seed,
                    double wall_seconds) {
    json manifest = {{"config", doc}, {"version", tpo_version()}, {"seed", seed},
                     {"csv_schema", "tpo-csv-v1"}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    // wall time lives apart from the manifest so seeded reruns stay byte-identical
    write_file(dir / "timing.txt", fmt(wall_seconds) + "\n");
}

// Shared emission for one solution level (elliptic: no time column).
void emit_level(std::ostringstream& sol, std::ostringstream& signs, std::ostringstream& fb,
                tpo_problem* p, const std::vector<double>& u, const double* t) {
    const int n = tpo_problem_node_count(p);
    const int dim = tpo_problem_dim(p);
    std::vector<double> xs(n), ys(n, 0.0);
    tpo_problem_node_coords(p, xs.data(), dim == 2 ? ys.data() : nullptr);

    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::abs(v));
    const double tol_sign = 1e-6 * (sup + 1.0);

    std::vector<int> classes(n);
    if (tpo_classify_signs(p, u.data(), tol_sign, classes.data()) != TPO_OK)
        fail_status(TPO_ERR_INTERNAL, "classify signs");

    for (int i = 0; i < n; ++i) {
        if (t) sol << fmt(*t) << ",";
        sol << fmt(xs[i]) << ",";
        if (dim == 2) sol << fmt(ys[i]) << ",";
        sol << fmt(u[i]) << "\n";
        if (t) signs << fmt(*t) << ",";
        signs << fmt(xs[i]) << ",";
        if (dim == 2) signs << fmt(ys[i]) << ",";
        signs << classes[i] << "\n";
    }

    std::vector<double> pts(static_cast<size_t>(2 * n) * dim);
    size_t count = 0;
    if (tpo_free_boundary(p, u.data(), tol_sign, pts.data(), 2 * n, &count) != TPO_OK)
        fail_status(TPO_ERR_INTERNAL, "free boundary");
    for (size_t k = 0; k < count; ++k) {
        if (t) fb << fmt(*t) << ",";
        fb << fmt(pts[k * dim]);
        if (dim == 2) fb << "," << fmt(pts[k * dim + 1]);
        fb << "\n";
    }
}

int cmd_solve_parabolic(const json& doc, unsigned long long seed) {
    const auto t_start = std::chrono::steady_clock::now();
    ProblemHandle ph;
    tpo_status s = tpo_problem_from_json(doc.dump().c_str(), &ph.p);
    if (s != TPO_OK) fail_status(s, "problem");
    if (tpo_problem_time_steps(ph.p) == 0)
        throw CliError{2, "solve-parabolic needs 'T' and 'steps' in the problem block"};
    if (tpo_problem_compatibility_gap(ph.p) > 1e-9)
        std::cerr << "warning: initial and boundary data disagree on the boundary by "
                  << tpo_problem_compatibility_gap(ph.p) << "\n";

    const std::string solver_json = doc.contains("solver") ? doc.at("solver").dump() : "{}";
    tpo_trace* trace = nullptr;
    s = tpo_solve_parabolic(ph.p, solver_json.c_str(), &trace);
    if (s != TPO_OK) fail_status(s, "solve-parabolic");

    const int n = tpo_problem_node_count(ph.p);
    const int dim = tpo_problem_dim(ph.p);
    const int snaps = tpo_trace_snapshot_count(trace);

    std::ostringstream sol, signs, fb, diag;
    const std::string coords = dim == 2 ? "x,y" : "x";
    sol << kCsvSchema << "\nt," << coords << ",u\n";
    signs << kCsvSchema << "\nt," << coords << ",class\n";
    fb << kCsvSchema << "\nt," << coords << "\n";
    diag << kCsvSchema << "\nm,t,ut_sup,residual_sup,inner_iterations\n";

    std::vector<double> u(n);
    for (int k = 0; k < snaps; ++k) {
        tpo_trace_snapshot_values(trace, k, u.data(), u.size());
        const double t = tpo_trace_snapshot_time(trace, k);
        emit_level(sol, signs, fb, ph.p, u, &t);
    }
    for (int m = 0; m < tpo_trace_step_count(trace); ++m) {
        double t, ut_sup, res_sup;
        int inner;
        tpo_trace_diagnostics(trace, m, &t, &ut_sup, &res_sup, &inner);
        diag << (m + 1) << "," << fmt(t) << "," << fmt(ut_sup) << "," << fmt(res_sup) << ","
             << inner << "\n";
    }
    tpo_trace_free(trace);

    const fs::path dir = output_dir(doc);
    if (wants(doc, "solution")) write_file(dir / "solution.csv", sol.str());
    if (wants(doc, "signs")) write_file(dir / "signs.csv", signs.str());
    if (wants(doc, "free_boundary")) write_file(dir / "free_boundary.csv", fb.str());
    if (wants(doc, "diagnostics")) write_file(dir / "diagnostics.csv", diag.str());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    if (wants(doc, "manifest")) write_manifest(dir, doc, seed, wall);
    return 0;
}

int cmd_solve_elliptic(const json& doc, unsigned long long seed) {
    const auto t_start = std::chrono::steady_clock::now();
    json problem_doc = doc;
    // drop any time block: this command solves the stationary problem
    if (problem_doc.contains("problem")) {
        problem_doc["problem"].erase("T");
        problem_doc["problem"].erase("steps");
    }
    ProblemHandle ph;
    tpo_status s = tpo_problem_from_json(problem_doc.dump().c_str(), &ph.p);
    if (s != TPO_OK) fail_status(s, "problem");

    const std::string solver_json = doc.contains("solver") ? doc.at("solver").dump() : "{}";
    tpo_elliptic_result* res = nullptr;
    s = tpo_solve_elliptic(ph.p, solver_json.c_str(), &res);
    if (s != TPO_OK) fail_status(s, "solve-elliptic");

    const int n = tpo_problem_node_count(ph.p);
    const int dim = tpo_problem_dim(ph.p);
    std::vector<double> u(n);
    tpo_elliptic_values(res, u.data(), u.size());

    std::ostringstream sol, signs, fb, diag;
    const std::string coords = dim == 2 ? "x,y" : "x";
    sol << kCsvSchema << "\n" << coords << ",u\n";
    signs << kCsvSchema << "\n" << coords << ",class\n";
    fb << kCsvSchema << "\n" << coords << "\n";
    diag << kCsvSchema << "\niterations,update_norm,residual_norm,converged\n";
    emit_level(sol, signs, fb, ph.p, u, nullptr);
    diag << tpo_elliptic_iterations(res) << "," << fmt(tpo_elliptic_update_norm(res)) << ","
         << fmt(tpo_elliptic_residual_norm(res)) << "," << tpo_elliptic_converged(res) << "\n";

    const bool converged = tpo_elliptic_converged(res) != 0;
    const int iters = tpo_elliptic_iterations(res);
    const double resnorm = tpo_elliptic_residual_norm(res);
    tpo_elliptic_result_free(res);

    const fs::path dir = output_dir(doc);
    if (wants(doc, "solution")) write_file(dir / "solution.csv", sol.str());
    if (wants(doc, "signs")) write_file(dir / "signs.csv", signs.str());
    if (wants(doc, "free_boundary")) write_file(dir / "free_boundary.csv", fb.str());
    if (wants(doc, "diagnostics")) write_file(dir / "diagnostics.csv", diag.str());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    if (wants(doc, "manifest")) write_manifest(dir, doc, seed, wall);

    if (!converged)
        throw CliError{1, "elliptic solver did not converge after " + std::to_string(iters) +
                              " sweeps (residual " + fmt(resnorm) + "); report written"};
    return 0;
}

int cmd_convergence_study(const json& doc) {
    char* report = nullptr;
    tpo_status s = tpo_convergence_study(doc.dump().c_str(), &report);
    if (s != TPO_OK) fail_status(s, "convergence-study");
    const std::string report_str = report;
    tpo_string_free(report);

    const fs::path dir = output_dir(doc);
    write_file(dir / "study.json", report_str + "\n");

    json rj = json::parse(report_str);
    std::ostringstream errs;
    errs << kCsvSchema << "\nh,error\n";
    for (const auto& lvl : rj.at("levels"))
        errs << fmt(lvl.at("h").get<double>()) << "," << fmt(lvl.at("error").get<double>())
             << "\n";
    write_file(dir / "errors.csv", errs.str());
    std::cout << "slope " << rj.at("slope").get<double>() << " over "
              << rj.at("levels").size() << " levels\n";
    return 0;
}

int cmd_verify(unsigned long long seed, int trials, const std::string& out) {
    char* report = nullptr;
    int passed = 0;
    tpo_status s = tpo_verify_run(seed, trials, &report, &passed);
    if (s != TPO_OK) fail_status(s, "verify");
    const std::string report_str = report;
    tpo_string_free(report);

    if (!out.empty()) {
        fs::create_directories(out);
        write_file(fs::path(out) / "verify_report.txt", report_str);
    }
    std::cout << report_str;
    return passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference solver for the two-phase obstacle problem"};
    app.require_subcommand(1);

    std::string config_path, out_dir, mode;
    unsigned long long seed = 42;
    int trials = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "config file (JSON)")->required();
        cmd->add_option("--out", out_dir, "output directory override");
        cmd->add_option("--seed", seed, "seed recorded in the manifest / used by verify");
    };

    auto* sp = app.add_subcommand("solve-parabolic", "march the time-dependent problem");
    add_common(sp, true);
    sp->add_option("--mode", mode, "explicit|implicit override");

    auto* se = app.add_subcommand("solve-elliptic", "solve the stationary membrane problem");
    add_common(se, true);
    se->add_option("--mode", mode, "ignored; elliptic solves are always projected Gauss-Seidel");

    auto* cs = app.add_subcommand("convergence-study", "grid-refinement error study");
    add_common(cs, true);

    auto* vf = app.add_subcommand("verify", "run the property-test verification suite");
    add_common(vf, false);
    vf->add_option("--trials", trials, "fuzz trial count (0 = default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (sp->parsed()) return cmd_solve_parabolic(load_config(config_path, out_dir, mode), seed);
        if (se->parsed()) return cmd_solve_elliptic(load_config(config_path, out_dir, mode), seed);
        if (cs->parsed()) return cmd_convergence_study(load_config(config_path, out_dir, ""));
        if (vf->parsed()) return cmd_verify(seed, trials, out_dir);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
