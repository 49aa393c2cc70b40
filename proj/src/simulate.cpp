#include "retscale/simulate.hpp"

#include "retscale/errors.hpp"
#include "retscale/intervals.hpp"
#include "retscale/parallel.hpp"
#include "retscale/seeds.hpp"
#include "retscale/stretched_exp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace retscale {

namespace {

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

void validate_plan(const SimulationPlan& plan) {
    if (!std::isfinite(plan.gamma) || !(plan.gamma > 0.0) || plan.gamma > 2.0)
        throw ValidationError("plan.gamma must lie in (0, 2]");
    if (plan.sizes.empty()) throw ValidationError("plan.sizes must be nonempty");
    for (auto s : plan.sizes)
        if (s < 2) throw ValidationError("plan.sizes entries must be at least 2");
    if (plan.resolutions.empty()) throw ValidationError("plan.resolutions must be nonempty");
    for (double r : plan.resolutions)
        if (!std::isfinite(r) || r < 0.0)
            throw ValidationError("plan.resolutions entries must be 0 (continuous) or positive");
    if (plan.n_realizations < 1)
        throw ValidationError("plan.n_realizations must be at least 1");
    if (plan.target_mean_taus.empty())
        throw ValidationError("plan.target_mean_taus must be nonempty");
    for (double t : plan.target_mean_taus)
        if (!std::isfinite(t) || !(t > 0.0))
            throw ValidationError("plan.target_mean_taus entries must be positive");
    if (plan.m_values.empty()) throw ValidationError("plan.m_values must be nonempty");
    for (double m : plan.m_values)
        if (!std::isfinite(m) || !(m > 0.0))
            throw ValidationError("plan.m_values entries must be positive");
}

std::vector<double> simulate_intervals(double gamma, double mean_tau, std::uint64_t n,
                                       std::uint64_t seed) {
    if (!(mean_tau > 0.0) || !std::isfinite(mean_tau))
        throw ValidationError("simulate_intervals: mean_tau must be positive");
    if (n == 0) throw ValidationError("simulate_intervals: n must be at least 1");
    const auto params = params_from_gamma(gamma);
    std::vector<double> taus = sample(params, n, seed);
    for (double& t : taus) t *= mean_tau;
    return taus;
}

std::vector<double> discretize(std::span<const double> taus, double resolution) {
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        throw ValidationError("discretize: resolution must be positive");
    std::vector<double> out(taus.begin(), taus.end());
    for (double& t : out) t = resolution * std::ceil(t / resolution);
    return out;
}

DiscretenessResult run_discreteness_experiment(const SimulationPlan& plan) {
    validate_plan(plan);
    const std::uint64_t n = plan.sizes.front();
    const std::size_t n_res = plan.resolutions.size();
    const std::size_t n_tgt = plan.target_mean_taus.size();
    const std::size_t n_rel = static_cast<std::size_t>(plan.n_realizations);
    const std::size_t n_m = plan.m_values.size();

    // One slot per (resolution, target, realization); reduced in index order
    // afterwards so scheduling cannot affect the result.
    struct Slot {
        double mean_tau = 0.0;
        std::vector<double> mu;
    };
    std::vector<Slot> slots(n_res * n_tgt * n_rel);

    parallel_for(slots.size(), [&](std::size_t task) {
        const std::size_t ri = task / (n_tgt * n_rel);
        const std::size_t ti = task / n_rel % n_tgt;
        const std::size_t k = task % n_rel;
        const double res = plan.resolutions[ri];
        const double target = plan.target_mean_taus[ti];
        const std::uint64_t seed =
            derive_seed(plan.rng_seed, "discreteness", {n, bits(res), bits(target), k});
        std::vector<double> taus = simulate_intervals(plan.gamma, target, n, seed);
        if (res > 0.0) taus = discretize(taus, res);
        Slot& s = slots[task];
        s.mean_tau = mean_of(taus);
        s.mu.reserve(n_m);
        for (double m : plan.m_values) s.mu.push_back(moment_of(taus, s.mean_tau, m));
    });

    DiscretenessResult out;
    out.gamma = plan.gamma;
    out.intervals_per_trial = n;
    out.n_realizations = plan.n_realizations;
    for (std::size_t ri = 0; ri < n_res; ++ri) {
        for (std::size_t mi = 0; mi < n_m; ++mi) {
            DiscretenessCurve dc;
            dc.resolution = plan.resolutions[ri];
            dc.curve.m = plan.m_values[mi];
            dc.curve.source = CurveSource::simulation;
            for (std::size_t ti = 0; ti < n_tgt; ++ti) {
                double mean_sum = 0.0, mu_sum = 0.0;
                for (std::size_t k = 0; k < n_rel; ++k) {
                    const Slot& s = slots[(ri * n_tgt + ti) * n_rel + k];
                    mean_sum += s.mean_tau;
                    mu_sum += s.mu[mi];
                }
                dc.curve.mean_taus.push_back(mean_sum / static_cast<double>(n_rel));
                dc.curve.moments.push_back(mu_sum / static_cast<double>(n_rel));
            }
            // Achieved means follow the targets but need not arrive sorted.
            std::vector<std::size_t> order(n_tgt);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return dc.curve.mean_taus[a] < dc.curve.mean_taus[b];
            });
            MomentCurve sorted;
            sorted.m = dc.curve.m;
            sorted.source = dc.curve.source;
            for (std::size_t i : order) {
                sorted.mean_taus.push_back(dc.curve.mean_taus[i]);
                sorted.moments.push_back(dc.curve.moments[i]);
            }
            dc.curve = std::move(sorted);
            out.curves.push_back(std::move(dc));
        }
    }
    return out;
}

std::vector<FiniteSizeEntry> run_finite_size_experiment(const SimulationPlan& plan) {
    validate_plan(plan);
    if (plan.target_mean_taus.size() < 3)
        throw ValidationError("plan.target_mean_taus needs at least 3 entries to fit alpha");
    const std::size_t n_sz = plan.sizes.size();
    const std::size_t n_rel = static_cast<std::size_t>(plan.n_realizations);
    const std::size_t n_m = plan.m_values.size();
    const std::size_t n_tgt = plan.target_mean_taus.size();

    const bool window_usable = [&] {
        std::size_t in = 0;
        for (double t : plan.target_mean_taus)
            if (t > kDefaultFitLow && t <= kDefaultFitHigh) ++in;
        return in >= 3;
    }();

    struct Slot {
        std::vector<double> alpha;       // per m, (10, 100] window
        std::vector<double> alpha_full;  // per m, all targets
    };
    std::vector<Slot> slots(n_sz * n_rel);

    parallel_for(slots.size(), [&](std::size_t task) {
        const std::size_t si = task / n_rel;
        const std::size_t k = task % n_rel;
        const std::uint64_t size = plan.sizes[si];

        std::vector<double> mean_taus(n_tgt);
        std::vector<std::vector<double>> mu(n_m, std::vector<double>(n_tgt));
        for (std::size_t ti = 0; ti < n_tgt; ++ti) {
            const double target = plan.target_mean_taus[ti];
            const std::uint64_t n_intervals = std::max<std::uint64_t>(
                2, static_cast<std::uint64_t>(std::llround(static_cast<double>(size) / target)));
            const std::uint64_t seed =
                derive_seed(plan.rng_seed, "finite_size", {size, bits(target), k});
            std::vector<double> taus = simulate_intervals(plan.gamma, target, n_intervals, seed);
            mean_taus[ti] = mean_of(taus);
            for (std::size_t mi = 0; mi < n_m; ++mi)
                mu[mi][ti] = moment_of(taus, mean_taus[ti], plan.m_values[mi]);
        }

        Slot& s = slots[task];
        s.alpha.resize(n_m);
        s.alpha_full.resize(n_m);
        for (std::size_t mi = 0; mi < n_m; ++mi) {
            MomentCurve curve;
            curve.m = plan.m_values[mi];
            curve.source = CurveSource::simulation;
            std::vector<std::size_t> order(n_tgt);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return mean_taus[a] < mean_taus[b]; });
            for (std::size_t i : order) {
                curve.mean_taus.push_back(mean_taus[i]);
                curve.moments.push_back(mu[mi][i]);
            }
            s.alpha_full[mi] =
                fit_alpha(curve, 0.0, std::numeric_limits<double>::infinity()).alpha;
            s.alpha[mi] = window_usable ? fit_alpha(curve).alpha : s.alpha_full[mi];
        }
    });

    std::vector<FiniteSizeEntry> out;
    out.reserve(n_sz * n_m);
    for (std::size_t si = 0; si < n_sz; ++si) {
        for (std::size_t mi = 0; mi < n_m; ++mi) {
            FiniteSizeEntry e;
            e.size = plan.sizes[si];
            e.m = plan.m_values[mi];
            e.n_realizations = plan.n_realizations;
            double sum = 0.0, sum_full = 0.0;
            for (std::size_t k = 0; k < n_rel; ++k) {
                sum += slots[si * n_rel + k].alpha[mi];
                sum_full += slots[si * n_rel + k].alpha_full[mi];
            }
            e.mean_alpha = sum / static_cast<double>(n_rel);
            e.mean_alpha_full = sum_full / static_cast<double>(n_rel);
            double ss = 0.0;
            for (std::size_t k = 0; k < n_rel; ++k) {
                const double d = slots[si * n_rel + k].alpha[mi] - e.mean_alpha;
                ss += d * d;
            }
            e.std_alpha = n_rel > 1 ? std::sqrt(ss / static_cast<double>(n_rel - 1)) : 0.0;
            out.push_back(e);
        }
    }
    return out;
}

} // namespace retscale
