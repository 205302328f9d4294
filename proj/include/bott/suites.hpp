#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bott/io.hpp"
#include "bott/report.hpp"
#include "bott/rotation.hpp"

namespace bott {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
    std::string suite = "all";
    std::uint64_t seed = 42;
    int d = 2;            // coefficient dimensions 1..d
    int window = 0;       // 0 picks the per-suite default
    int points = 3;       // interior Pythagorean points
    std::vector<CirclePoint> explicit_points;
    int s = 3;            // decomposition lengths 1..s
    int instances = 20;   // randomized instances per check
    RotVariant variant = RotVariant::Unitary;
};

const std::vector<std::string>& suite_ids();
void validate(const SuiteConfig& cfg);  // throws ConfigError
json config_json(const SuiteConfig& cfg);

// Interior points of the config: the explicit list, or the grid without endpoints.
std::vector<CirclePoint> interior_points(const SuiteConfig& cfg);

Report suite_artkey(const SuiteConfig& cfg);
Report suite_stabilize(const SuiteConfig& cfg);
Report suite_bott(const SuiteConfig& cfg);
Report suite_linearize(const SuiteConfig& cfg);
Report suite_toeplitz(const SuiteConfig& cfg);
Report suite_contract(const SuiteConfig& cfg);
Report suite_finite(const SuiteConfig& cfg);
Report suite_oracle_equiv(const SuiteConfig& cfg);

// Runs cfg.suite ("all" runs every suite); rows come back sorted.
Report run_suite(const SuiteConfig& cfg);

}  // namespace bott
