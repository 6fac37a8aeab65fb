// Run configuration: JSON ingestion of problem + solver + output blocks.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tpo/parabolic.hpp"
#include "tpo/problem.hpp"

namespace tpo {

// Configuration problems are reported separately from runtime failures so
// callers can map them to a distinct exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string dir = "out";
    std::vector<std::string> artifacts;   // subset of the known artifact names
};

struct RunConfig {
    ProblemSpec problem;
    StepperConfig stepper;
    SolverConfig elliptic;          // tolerances for elliptic solves
    OutputOptions output;
    std::string resolved_json;      // canonical echo for the run manifest
};

// Parses the full config document. Unknown keys are rejected with a
// diagnostic naming the offending field.
RunConfig parse_run_config(const std::string& json_text);

// Parses just a solver block (used by the library API); empty or "null"
// input yields defaults.
void parse_solver_block(const std::string& json_text, StepperConfig& stepper,
                        SolverConfig& elliptic);

} // namespace tpo
