#pragma once

#include "retscale/multiscaling.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace retscale {

// Monte-Carlo plan shared by the discreteness and finite-size experiments.
// sizes: for the discreteness run, intervals per trial (first entry is used);
// for the finite-size run, the simulated record length in time units, so a
// target mean interval t gets about size/t intervals. resolutions: sampling
// grids in time units, 0 meaning continuous.
struct SimulationPlan {
    double gamma = 0.3;
    std::vector<std::uint64_t> sizes;
    std::vector<double> resolutions;
    int n_realizations = 100;
    std::vector<double> target_mean_taus;
    std::vector<double> m_values;
    std::uint64_t rng_seed = 0;
};

// Throws ValidationError naming the offending field.
void validate_plan(const SimulationPlan& plan);

// i.i.d. stretched-exponential intervals with population mean mean_tau.
std::vector<double> simulate_intervals(double gamma, double mean_tau, std::uint64_t n,
                                       std::uint64_t seed);

// Snaps each interval up to the sampling grid: resolution * ceil(tau /
// resolution). An event inside a sampling window is seen at the window's end,
// so no interval is ever shortened and the minimum is one grid unit.
std::vector<double> discretize(std::span<const double> taus, double resolution);

struct DiscretenessCurve {
    double resolution = 0.0;  // 0 = continuous
    MomentCurve curve;
};

struct DiscretenessResult {
    double gamma = 0.0;
    std::uint64_t intervals_per_trial = 0;
    int n_realizations = 0;
    std::vector<DiscretenessCurve> curves;  // ordered by (resolution, m)
};

// For each (resolution, target mean interval): draws intervals_per_trial
// intervals, snaps them to the grid, computes mu_m against the achieved mean,
// and averages both over the realizations.
DiscretenessResult run_discreteness_experiment(const SimulationPlan& plan);

struct FiniteSizeEntry {
    std::uint64_t size = 0;
    double m = 0.0;
    double mean_alpha = 0.0;       // fit over the (10, 100] window
    double std_alpha = 0.0;        // spread of alpha across realizations
    double mean_alpha_full = 0.0;  // fit over every swept target
    int n_realizations = 0;
};

// Per size and realization: simulates a record of the given time budget at
// each target (so larger targets yield fewer intervals), fits alpha over the
// (10, 100] window, and averages across realizations. Entries ordered by
// (size, m).
std::vector<FiniteSizeEntry> run_finite_size_experiment(const SimulationPlan& plan);

} // namespace retscale
