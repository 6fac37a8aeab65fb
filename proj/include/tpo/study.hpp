// Convergence studies: grid-refinement error tables with fitted slopes.
#pragma once

#include <string>
#include <vector>

namespace tpo {

struct StudyResult {
    std::string kind;
    std::string output_dir;          // from the config's output block
    std::vector<double> h;           // dx or dt per level
    std::vector<double> error;
    double slope = 0.0;
    double fit_residual = 0.0;
};

// Config document:
//   { "study": { "kind": "heat_space" | "heat_time" | "consistency_elliptic"
//                       | "consistency_parabolic",
//                "levels": [...],  ...kind-specific knobs... },
//     "output": { "dir": "..." } }
// Fewer than 3 levels or any unknown key is a ConfigError.
StudyResult run_study(const std::string& config_json);

std::string study_report_json(const StudyResult& result);

} // namespace tpo
