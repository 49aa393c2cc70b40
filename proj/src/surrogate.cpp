#include "retscale/surrogate.hpp"

#include "retscale/errors.hpp"
#include "retscale/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace retscale {

namespace {

// Positions of the series in ascending value order, ties kept in index order.
std::vector<std::size_t> ascending_order(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
}

} // namespace

std::vector<double> make_surrogate(std::span<const double> v, const SurrogateConfig& cfg) {
    if (v.size() < 2) throw ValidationError("make_surrogate: need at least 2 values");
    if (cfg.iterations < 1) throw ValidationError("make_surrogate: iterations must be >= 1");
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError("make_surrogate: non-finite input value");

    const std::size_t n = v.size();
    const auto target_spec = rfft(v);
    std::vector<double> target_mag(target_spec.size());
    for (std::size_t k = 0; k < target_spec.size(); ++k) target_mag[k] = std::abs(target_spec[k]);

    std::vector<double> sorted_values(v.begin(), v.end());
    std::sort(sorted_values.begin(), sorted_values.end());

    std::vector<double> current(v.begin(), v.end());
    std::mt19937_64 rng(cfg.rng_seed);
    std::shuffle(current.begin(), current.end(), rng);

    std::vector<std::complex<double>> spec;
    for (int it = 0; it < cfg.iterations; ++it) {
        spec = rfft(current);
        spec[0] = target_spec[0];  // rank remap restores the mean anyway
        for (std::size_t k = 1; k < spec.size(); ++k) {
            const double mag = std::abs(spec[k]);
            spec[k] = mag > 0.0 ? spec[k] * (target_mag[k] / mag)
                                : std::complex<double>(target_mag[k], 0.0);
        }
        current = irfft(spec, n);

        const auto order = ascending_order(current);
        for (std::size_t r = 0; r < n; ++r) current[order[r]] = sorted_values[r];

        if (cfg.spectrum_tolerance > 0.0 && it + 1 < cfg.iterations &&
            spectrum_distance(v, current) <= cfg.spectrum_tolerance)
            break;
    }
    return current;
}

double spectrum_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("spectrum_distance: length mismatch");
    const auto sa = rfft(a);
    const auto sb = rfft(b);
    double num = 0.0, denom = 0.0;
    for (std::size_t k = 1; k < sa.size(); ++k) {
        const double d = std::abs(sa[k]) - std::abs(sb[k]);
        num += d * d;
        denom += std::abs(sa[k]) * std::abs(sa[k]);
    }
    if (denom == 0.0)
        return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / denom);
}

} // namespace retscale
