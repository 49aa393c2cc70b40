#include "retscale/multiscaling.hpp"

#include "retscale/errors.hpp"

#include <algorithm>
#include <cmath>

namespace retscale {

std::string to_string(CurveSource s) {
    switch (s) {
        case CurveSource::original: return "original";
        case CurveSource::surrogate: return "surrogate";
        case CurveSource::simulation: return "simulation";
    }
    return "unknown";
}

AlphaEstimate fit_alpha(const MomentCurve& curve, double range_low, double range_high) {
    if (!(range_low < range_high))
        throw ValidationError("fit_alpha: range_low must be below range_high");
    if (curve.mean_taus.size() != curve.moments.size())
        throw ValidationError("fit_alpha: curve arrays differ in length");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < curve.mean_taus.size(); ++i) {
        const double t = curve.mean_taus[i];
        if (!(t > range_low) || !(t <= range_high)) continue;
        const double mu = curve.moments[i];
        if (!(t > 0.0) || !(mu > 0.0) || !std::isfinite(t) || !std::isfinite(mu))
            throw ValidationError("fit_alpha: curve points must be positive and finite");
        lx.push_back(std::log(t));
        ly.push_back(std::log(mu));
    }
    const std::size_t n = lx.size();
    if (n < 3)
        throw ValidationError("fit_alpha: need at least 3 points inside (" +
                              std::to_string(range_low) + ", " + std::to_string(range_high) +
                              "], got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw ValidationError("fit_alpha: degenerate abscissae");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        sse += r * r;
    }
    AlphaEstimate est;
    est.m = curve.m;
    est.alpha = slope;
    est.stderr_ = std::sqrt(std::max(sse, 0.0) / static_cast<double>(n - 2) / sxx);
    est.n_points = n;
    est.range_low = range_low;
    est.range_high = range_high;
    return est;
}

AlphaHistogram alpha_histogram(std::span<const AlphaEstimate> estimates, double bin_width) {
    if (estimates.empty()) throw ValidationError("alpha_histogram: empty input");
    if (!(bin_width > 0.0)) throw ValidationError("alpha_histogram: bin width must be positive");
    const double m = estimates.front().m;
    for (const auto& e : estimates)
        if (e.m != m) throw ValidationError("alpha_histogram: mixed moment orders");

    AlphaHistogram h;
    h.m = m;
    h.bin_width = bin_width;
    h.n = estimates.size();

    // Bins aligned at integer multiples of the width.
    auto bin_of = [bin_width](double a) {
        return static_cast<long long>(std::floor(a / bin_width));
    };
    long long lo = bin_of(estimates.front().alpha), hi = lo;
    double sum = 0.0;
    for (const auto& e : estimates) {
        if (!std::isfinite(e.alpha))
            throw ValidationError("alpha_histogram: non-finite alpha");
        lo = std::min(lo, bin_of(e.alpha));
        hi = std::max(hi, bin_of(e.alpha));
        sum += e.alpha;
    }
    h.bin_left.resize(static_cast<std::size_t>(hi - lo + 1));
    h.counts.assign(h.bin_left.size(), 0);
    for (std::size_t i = 0; i < h.bin_left.size(); ++i)
        h.bin_left[i] = static_cast<double>(lo + static_cast<long long>(i)) * bin_width;
    for (const auto& e : estimates) ++h.counts[static_cast<std::size_t>(bin_of(e.alpha) - lo)];

    h.mean = sum / static_cast<double>(h.n);
    double ss = 0.0;
    for (const auto& e : estimates) ss += (e.alpha - h.mean) * (e.alpha - h.mean);
    h.stddev = h.n > 1 ? std::sqrt(ss / static_cast<double>(h.n - 1)) : 0.0;
    return h;
}

AlphaEnsemble make_ensemble(double m, std::vector<AlphaEstimate> members) {
    if (members.empty()) throw ValidationError("make_ensemble: no members");
    for (const auto& e : members)
        if (e.m != m) throw ValidationError("make_ensemble: mixed moment orders");
    AlphaEnsemble ens;
    ens.m = m;
    double sum = 0.0;
    for (const auto& e : members) sum += e.alpha;
    ens.mean_alpha = sum / static_cast<double>(members.size());
    double ss = 0.0;
    for (const auto& e : members) ss += (e.alpha - ens.mean_alpha) * (e.alpha - ens.mean_alpha);
    ens.std_alpha = members.size() > 1
                        ? std::sqrt(ss / static_cast<double>(members.size() - 1))
                        : 0.0;
    ens.members = std::move(members);
    return ens;
}

std::vector<AlphaEnsemble> alpha_vs_m(const std::map<double, std::vector<MomentCurve>>& curves_by_m,
                                      double range_low, double range_high) {
    if (curves_by_m.empty()) throw ValidationError("alpha_vs_m: no moment curves");
    std::vector<AlphaEnsemble> out;
    out.reserve(curves_by_m.size());
    for (const auto& [m, curves] : curves_by_m) {
        if (curves.empty())
            throw ValidationError("alpha_vs_m: no curves for m = " + std::to_string(m));
        std::vector<AlphaEstimate> members;
        members.reserve(curves.size());
        for (const auto& c : curves) {
            if (c.m != m) throw ValidationError("alpha_vs_m: curve order disagrees with its key");
            members.push_back(fit_alpha(c, range_low, range_high));
        }
        out.push_back(make_ensemble(m, std::move(members)));
    }
    return out;
}

} // namespace retscale
