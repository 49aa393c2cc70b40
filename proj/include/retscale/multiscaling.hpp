#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace retscale {

enum class CurveSource { original, surrogate, simulation };

std::string to_string(CurveSource s);

// mu_m as a function of the mean interval, one point per swept threshold.
struct MomentCurve {
    double m = 0.0;
    std::vector<double> mean_taus;  // ascending, positive
    std::vector<double> moments;    // parallel, positive
    CurveSource source = CurveSource::original;
};

struct AlphaEstimate {
    double m = 0.0;
    double alpha = 0.0;
    double stderr_ = 0.0;
    std::size_t n_points = 0;
    double range_low = 0.0;
    double range_high = 0.0;
};

// Fit window for the power law mu_m ~ <tau>^alpha: 10 < <tau> <= 100.
inline constexpr double kDefaultFitLow = 10.0;
inline constexpr double kDefaultFitHigh = 100.0;

// OLS slope of log mu_m on log <tau> over points with
// range_low < mean_tau <= range_high. Needs at least 3 in-range points.
AlphaEstimate fit_alpha(const MomentCurve& curve, double range_low = kDefaultFitLow,
                        double range_high = kDefaultFitHigh);

struct AlphaHistogram {
    double m = 0.0;
    double bin_width = 0.0;
    std::vector<double> bin_left;  // bin covers [bin_left, bin_left + bin_width)
    std::vector<std::size_t> counts;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    std::size_t n = 0;
};

inline constexpr double kAlphaBinWidth = 0.02;

AlphaHistogram alpha_histogram(std::span<const AlphaEstimate> estimates,
                               double bin_width = kAlphaBinWidth);

struct AlphaEnsemble {
    double m = 0.0;
    std::vector<AlphaEstimate> members;
    double mean_alpha = 0.0;
    double std_alpha = 0.0;  // sample standard deviation; 0 for a single member
};

AlphaEnsemble make_ensemble(double m, std::vector<AlphaEstimate> members);

// Per-order ensemble statistics, ascending in m.
std::vector<AlphaEnsemble> alpha_vs_m(
    const std::map<double, std::vector<MomentCurve>>& curves_by_m,
    double range_low = kDefaultFitLow, double range_high = kDefaultFitHigh);

} // namespace retscale
