#pragma once

#include "retscale/empirical.hpp"
#include "retscale/intervals.hpp"
#include "retscale/multiscaling.hpp"
#include "retscale/simulate.hpp"
#include "retscale/volatility.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace retscale {

inline constexpr std::string_view kVersion = "0.1.0";

// Run identity stamped at the top of every output file.
struct OutputHeader {
    std::uint64_t seed = 0;
    std::string config_hash;
};

void write_header(std::ostream& os, const OutputHeader& h);

// Shortest round-trip decimal representation; reruns are byte-identical.
std::string format_double(double v);

// Filename-safe rendering of a numeric label: '.' -> 'p', '-' -> 'm'.
std::string slug(double v);

void write_volatility_csv(std::ostream& os, const VolatilitySeries& v, const OutputHeader& h);
void write_profile_csv(std::ostream& os, std::span<const double> profile, const OutputHeader& h);

// Summary rows, one per achieved threshold: q,mean_tau,n.
void write_sweep_csv(std::ostream& os, const ThresholdSweep& sweep, const OutputHeader& h);
// Ragged layout q,mean_tau,n,taus... with the raw intervals appended per row.
void write_intervals_csv(std::ostream& os, const ThresholdSweep& sweep, const OutputHeader& h);

void write_survival_csv(std::ostream& os, const EmpiricalCdf& cdf, const OutputHeader& h);
void write_moment_curves_csv(std::ostream& os, std::span<const MomentCurve> curves,
                             const OutputHeader& h);
void write_alpha_csv(std::ostream& os, std::span<const AlphaEstimate> estimates,
                     const OutputHeader& h);
void write_ensemble_csv(std::ostream& os, std::span<const AlphaEnsemble> ensembles,
                        const OutputHeader& h);
void write_histogram_csv(std::ostream& os, const AlphaHistogram& hist, const OutputHeader& h);
void write_discreteness_csv(std::ostream& os, const DiscretenessResult& result,
                            const OutputHeader& h);
void write_finite_size_csv(std::ostream& os, std::span<const FiniteSizeEntry> entries,
                           const OutputHeader& h);

// Reads the layout written by write_volatility_csv (comment lines skipped).
// Only the value columns are recovered; the profile sidecar is not consulted.
VolatilitySeries read_volatility_csv(std::istream& in, const std::string& instrument_id);

} // namespace retscale
