#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace retscale {

// Return intervals between successive exceedances of one threshold q.
// With fewer than two exceedances taus is empty and mean_tau is 0; callers
// check empty() rather than receiving an error.
struct IntervalSeries {
    double q = 0.0;
    std::vector<std::int64_t> taus;       // successive index differences, all >= 1
    double mean_tau = 0.0;
    std::int64_t n_exceedances = 0;
    bool empty() const { return taus.empty(); }
};

struct SweepWarning {
    double target = 0.0;
    std::string reason;
};

struct ThresholdSweep {
    std::vector<IntervalSeries> entries;  // ordered by increasing q
    std::vector<SweepWarning> warnings;   // targets that produced no entry
};

// Exceedances are positions i with v[i] > q (strict); intervals are the
// differences of successive exceedance positions, so the stretches before
// the first and after the last exceedance are discarded.
IntervalSeries extract_intervals(std::span<const double> v, double q);

// Below this many exceedances the moment estimates are noise-dominated and
// the sweep omits the entry (reported in warnings).
inline constexpr std::int64_t kMinExceedances = 50;

// For each target mean interval, bisects on q in [0, max(v)] until the
// achieved mean interval is within 2% of the target or 60 iterations pass,
// and keeps the evaluated entry closest to the target. Reported mean_tau is
// always the achieved empirical value.
ThresholdSweep sweep_thresholds(std::span<const double> v, std::span<const double> targets,
                                std::int64_t min_exceedances = kMinExceedances);

// mu_m = ( mean over taus of (tau/mean_tau)^m )^(1/m). mu_1 = 1 identically.
// Returns NaN on internal overflow (extreme m on long-tailed data); callers
// exclude such entries.
double moment(const IntervalSeries& s, double m);
double moment_of(std::span<const double> taus, double m);
double moment_of(std::span<const double> taus, double mean_tau, double m);

// tau / mean_tau for each interval; the mean of the output is exactly 1.
std::vector<double> scaled_intervals(const IntervalSeries& s);

} // namespace retscale
