#include "retscale/intervals.hpp"

#include "retscale/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace retscale {

IntervalSeries extract_intervals(std::span<const double> v, double q) {
    if (v.empty())
        throw ValidationError("interval extraction requires a nonempty series");
    if (!(q > 0.0))
        throw ValidationError("threshold q must be positive");

    IntervalSeries s;
    s.q = q;
    std::int64_t prev = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > q) {
            if (prev >= 0)
                s.taus.push_back(static_cast<std::int64_t>(i) - prev);
            prev = static_cast<std::int64_t>(i);
            ++s.n_exceedances;
        }
    }
    if (!s.taus.empty()) {
        double sum = 0.0;
        for (std::int64_t t : s.taus)
            sum += static_cast<double>(t);
        s.mean_tau = sum / static_cast<double>(s.taus.size());
    }
    return s;
}

ThresholdSweep sweep_thresholds(std::span<const double> v, std::span<const double> targets,
                                std::int64_t min_exceedances) {
    if (v.empty())
        throw ValidationError("threshold sweep requires a nonempty series");
    for (std::size_t i = 1; i < targets.size(); ++i)
        if (!(targets[i] >= targets[i - 1]))
            throw ValidationError("sweep targets must be sorted ascending");

    const double v_max = *std::max_element(v.begin(), v.end());
    ThresholdSweep sweep;

    for (double target : targets) {
        if (!(target >= 1.0)) {
            sweep.warnings.push_back({target, "target mean interval below 1"});
            continue;
        }

        // mean_tau(q) is a nondecreasing step function of q; bisection
        // brackets the target and we keep the closest valid evaluation.
        double lo = 0.0;
        double hi = v_max;
        bool have_best = false;
        IntervalSeries best;
        double best_gap = 0.0;

        auto consider = [&](IntervalSeries&& cand) -> double {
            double achieved = cand.empty() ? std::numeric_limits<double>::infinity()
                                           : cand.mean_tau;
            if (!cand.empty() && cand.n_exceedances >= min_exceedances) {
                double gap = std::abs(achieved - target);
                if (!have_best || gap < best_gap) {
                    best = std::move(cand);
                    best_gap = gap;
                    have_best = true;
                }
            }
            return achieved;
        };

        double achieved_lo = consider(extract_intervals(v, std::nextafter(lo, 1.0)));
        if (achieved_lo < target) {
            for (int iter = 0; iter < 60; ++iter) {
                if (have_best && best_gap <= 0.02 * target)
                    break;
                double mid = 0.5 * (lo + hi);
                double achieved = consider(extract_intervals(v, mid));
                if (achieved < target)
                    lo = mid;
                else
                    hi = mid;
            }
        }

        if (have_best)
            sweep.entries.push_back(std::move(best));
        else
            sweep.warnings.push_back(
                {target, "no threshold with at least " + std::to_string(min_exceedances) +
                             " exceedances reaches this target"});
    }

    std::sort(sweep.entries.begin(), sweep.entries.end(),
              [](const IntervalSeries& a, const IntervalSeries& b) { return a.q < b.q; });
    return sweep;
}

double moment_of(std::span<const double> taus, double mean_tau, double m) {
    if (taus.empty())
        throw ValidationError("moment of an empty interval series");
    if (m == 0.0)
        throw ValidationError("moment order must be nonzero");
    if (!(mean_tau > 0.0))
        throw ValidationError("moment requires a positive mean interval");

    double acc = 0.0;
    for (double t : taus)
        acc += std::pow(t / mean_tau, m);
    double mean_pow = acc / static_cast<double>(taus.size());
    double mu = std::pow(mean_pow, 1.0 / m);
    return std::isfinite(mu) ? mu : std::numeric_limits<double>::quiet_NaN();
}

double moment_of(std::span<const double> taus, double m) {
    if (taus.empty())
        throw ValidationError("moment of an empty interval series");
    double sum = 0.0;
    for (double t : taus)
        sum += t;
    return moment_of(taus, sum / static_cast<double>(taus.size()), m);
}

double moment(const IntervalSeries& s, double m) {
    if (s.empty())
        throw ValidationError("moment of an empty interval series");
    std::vector<double> taus(s.taus.begin(), s.taus.end());
    return moment_of(taus, s.mean_tau, m);
}

std::vector<double> scaled_intervals(const IntervalSeries& s) {
    if (s.empty())
        throw ValidationError("scaling an empty interval series");
    std::vector<double> out;
    out.reserve(s.taus.size());
    for (std::int64_t t : s.taus)
        out.push_back(static_cast<double>(t) / s.mean_tau);
    return out;
}

} // namespace retscale
