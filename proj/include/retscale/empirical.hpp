#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace retscale {

// Empirical survival function D(x) = #{samples >= x} / n, tabulated at the
// distinct sample values. D(min sample) = 1 by construction.
struct EmpiricalCdf {
    std::vector<double> xs;        // strictly increasing
    std::vector<double> survival;  // nonincreasing, in [0, 1]
    double q = 0.0;                // threshold the samples came from
    std::size_t n = 0;

    // Survival at an arbitrary point, step convention as above.
    double eval(double x) const;
};

EmpiricalCdf empirical_survival(std::span<const double> scaled, double q);

// Kendall rank correlation with tie correction (tau-b). Returns 0 when every
// pair is tied in one of the variables.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Threshold trend of a family of survival curves, evaluated on a common
// 50-point log-spaced grid spanning the intersection of their supports.
// Interpolation of D is linear in log x. trend[i] is the Kendall tau-b of
// (q, D(grid[i])) across the curves; perfect collapse gives zero everywhere.
struct CollapseDeviation {
    std::vector<double> grid;
    std::vector<double> trend;
    double mean_trend_below_1 = 0.0;  // NaN when the grid has no points there
    double mean_trend_above_1 = 0.0;
    int sign_below_1 = 0;  // sign of the mean trend: -1, 0, +1
    int sign_above_1 = 0;
};

CollapseDeviation collapse_deviation(std::span<const EmpiricalCdf> cdfs);

} // namespace retscale
