#include "retscale/empirical.hpp"

#include "retscale/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace retscale {

double EmpiricalCdf::eval(double x) const {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return 0.0;
    return survival[static_cast<std::size_t>(it - xs.begin())];
}

EmpiricalCdf empirical_survival(std::span<const double> scaled, double q) {
    if (scaled.empty()) throw ValidationError("empirical_survival: empty sample");
    std::vector<double> sorted(scaled.begin(), scaled.end());
    for (double v : sorted)
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError("empirical_survival: samples must be positive and finite");
    std::sort(sorted.begin(), sorted.end());

    EmpiricalCdf cdf;
    cdf.q = q;
    cdf.n = sorted.size();
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        cdf.xs.push_back(sorted[i]);
        cdf.survival.push_back(static_cast<double>(sorted.size() - i) / n);
        i = j;
    }
    return cdf;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("kendall_tau_b: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw ValidationError("kendall_tau_b: need at least 2 observations");

    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) {
                ++ties_x;
                ++ties_y;
            } else if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
    const double denom = std::sqrt(static_cast<double>(n0 - ties_x)) *
                         std::sqrt(static_cast<double>(n0 - ties_y));
    if (denom == 0.0) return 0.0;
    return static_cast<double>(concordant - discordant) / denom;
}

CollapseDeviation collapse_deviation(std::span<const EmpiricalCdf> cdfs) {
    if (cdfs.size() < 2) throw ValidationError("collapse_deviation: need at least 2 curves");
    {
        std::set<double> qs;
        for (const auto& c : cdfs) qs.insert(c.q);
        if (qs.size() != cdfs.size())
            throw ValidationError("collapse_deviation: thresholds must be distinct");
    }

    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (const auto& c : cdfs) {
        if (c.xs.empty()) throw ValidationError("collapse_deviation: empty curve");
        lo = std::max(lo, c.xs.front());
        hi = std::min(hi, c.xs.back());
    }
    if (!(lo < hi)) throw DataError("collapse_deviation: curve supports do not overlap");

    constexpr int kGridPoints = 50;
    CollapseDeviation out;
    out.grid.reserve(kGridPoints);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < kGridPoints; ++k)
        out.grid.push_back(std::exp(llo + (lhi - llo) * k / (kGridPoints - 1)));
    out.grid.front() = lo;
    out.grid.back() = hi;

    // D at a grid point, linear in log x between tabulated values.
    auto interp = [](const EmpiricalCdf& c, double g) {
        auto it = std::lower_bound(c.xs.begin(), c.xs.end(), g);
        if (it == c.xs.end()) return c.survival.back();
        std::size_t i = static_cast<std::size_t>(it - c.xs.begin());
        if (c.xs[i] == g || i == 0) return c.survival[i];
        const double t = (std::log(g) - std::log(c.xs[i - 1])) /
                         (std::log(c.xs[i]) - std::log(c.xs[i - 1]));
        return (1.0 - t) * c.survival[i - 1] + t * c.survival[i];
    };

    std::vector<double> qs(cdfs.size());
    for (std::size_t i = 0; i < cdfs.size(); ++i) qs[i] = cdfs[i].q;

    out.trend.reserve(out.grid.size());
    std::vector<double> dvals(cdfs.size());
    double sum_below = 0.0, sum_above = 0.0;
    std::size_t n_below = 0, n_above = 0;
    for (double g : out.grid) {
        for (std::size_t i = 0; i < cdfs.size(); ++i) dvals[i] = interp(cdfs[i], g);
        const double tau = kendall_tau_b(qs, dvals);
        out.trend.push_back(tau);
        if (g < 1.0) {
            sum_below += tau;
            ++n_below;
        } else if (g > 1.0) {
            sum_above += tau;
            ++n_above;
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.mean_trend_below_1 = n_below ? sum_below / static_cast<double>(n_below) : nan;
    out.mean_trend_above_1 = n_above ? sum_above / static_cast<double>(n_above) : nan;
    auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
    out.sign_below_1 = n_below ? sign(out.mean_trend_below_1) : 0;
    out.sign_above_1 = n_above ? sign(out.mean_trend_above_1) : 0;
    return out;
}

} // namespace retscale
