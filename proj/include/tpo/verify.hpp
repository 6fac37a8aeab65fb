// Property-test suite: executes the monotone-scheme hypotheses and the
// solver cross-checks, aggregating to a single pass/fail report.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "tpo/problem.hpp"

namespace tpo {

struct VerifyOptions {
    std::uint64_t seed = 42;
    int fuzz_trials = 1000;
    int step_trials = 200;        // explicit-step exactness instances
    int oracle_trials = 25;       // tiny brute-force comparisons
    int comparison_trials = 25;   // ordered-data pairs per mode
};

struct VerifyResult {
    bool passed = false;
    std::string report;           // one line per property, deterministic per seed
};

VerifyResult run_verification(const VerifyOptions& options);

// Randomized instance generators shared by the suite and the tests.
// cfl_fraction scales dt relative to the explicit bound dx^2/K.
ProblemSpec random_problem(std::mt19937_64& rng, int dim, int nodes, bool with_time,
                           double cfl_fraction = 0.9);

// 1D instance with at most 6 interior nodes, for the exhaustive oracle.
ProblemSpec random_tiny_elliptic(std::mt19937_64& rng);

} // namespace tpo
