#pragma once

#include "retscale/simulate.hpp"
#include "retscale/surrogate.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace retscale {

// Effective run configuration: JSON config file plus command-line overrides.
// Every field participates in the canonical echo, so the config hash pins
// the full experiment.
struct RunConfig {
    std::vector<std::string> inputs;       // price/volatility CSV files or directories
    std::vector<std::string> instruments;  // optional id filter (file stems)
    std::vector<double> sweep_targets;     // target mean intervals for the threshold sweep
    double fit_low = kDefaultFitLow;
    double fit_high = kDefaultFitHigh;
    std::vector<double> m_values{0.25, 0.5, 1.0, 2.0};
    std::vector<double> q_values{2.0, 3.0, 4.0, 5.0};  // survival-curve thresholds
    std::int64_t min_exceedances = 50;
    SurrogateConfig surrogate;
    bool with_surrogate = false;
    std::optional<SimulationPlan> discreteness_plan;
    std::optional<SimulationPlan> finite_size_plan;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
};

// 12 log-spaced mean-interval targets in (10, 100].
std::vector<double> default_sweep_targets();

// Full-scale experiment plans (seed filled in from the master seed at run
// time).
SimulationPlan default_discreteness_plan();
SimulationPlan default_finite_size_plan();

// Throws ValidationError with a field-level message on any malformed or
// unknown key.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Canonical echo of every effective field; key order is fixed.
nlohmann::json config_to_json(const RunConfig& c);

// 16 hex digits over the canonical echo.
std::string config_hash(const RunConfig& c);

void run_volatility(const RunConfig& c);
void run_analyze(const RunConfig& c);
void run_simulate(const RunConfig& c);
void run_surrogate(const RunConfig& c);

} // namespace retscale
