#include "retscale/stretched_exp.hpp"

#include "retscale/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace retscale {

StretchedExpParams params_from_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw ValidationError("stretched-exponential exponent must be positive and finite");
    if (gamma > 2.0)
        throw ValidationError("stretched-exponential exponent above 2 is not supported");

    double lg1 = std::lgamma(1.0 / gamma);
    double lg2 = std::lgamma(2.0 / gamma);
    StretchedExpParams p;
    p.gamma = gamma;
    p.a = std::exp(lg2 - lg1);
    p.c = gamma * std::exp(lg2 - 2.0 * lg1);
    return p;
}

double density(const StretchedExpParams& p, double x) {
    if (x < 0.0)
        return 0.0;
    return p.c * std::exp(-std::pow(p.a * x, p.gamma));
}

double survival(const StretchedExpParams& p, double x) {
    if (!(x >= 0.0))
        throw ValidationError("survival requires x >= 0");
    if (x == 0.0)
        return 1.0;
    return boost::math::gamma_q(1.0 / p.gamma, std::pow(p.a * x, p.gamma));
}

double analytic_moment(const StretchedExpParams& p, double m) {
    if (!(m > -1.0))
        throw ValidationError("analytic moment diverges for m <= -1");
    if (m == 0.0)
        throw ValidationError("moment order must be nonzero");
    double lg = std::lgamma((m + 1.0) / p.gamma) - std::lgamma(1.0 / p.gamma);
    return std::exp(lg / m) / p.a;
}

std::vector<double> sample(const StretchedExpParams& p, std::size_t n, std::uint64_t seed) {
    if (n < 1)
        throw ValidationError("sample size must be at least 1");
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma_var(1.0 / p.gamma, 1.0);
    std::vector<double> out(n);
    double inv_gamma = 1.0 / p.gamma;
    for (double& x : out)
        x = std::pow(gamma_var(rng), inv_gamma) / p.a;
    return out;
}

namespace {

// Squared survival-curve error of the family member with exponent g against
// the empirical survival of the sorted sample, at the given abscissae.
double survival_objective(double g, const std::vector<double>& sorted,
                          const std::vector<double>& xs) {
    StretchedExpParams p = params_from_gamma(g);
    double n = static_cast<double>(sorted.size());
    double sse = 0.0;
    for (double x : xs) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
        double emp = static_cast<double>(sorted.end() - it) / n;
        double diff = emp - survival(p, x);
        sse += diff * diff;
    }
    return sse;
}

} // namespace

GammaFit fit_gamma(std::span<const double> scaled) {
    if (scaled.size() < 100)
        throw ValidationError("gamma fit requires at least 100 samples");

    std::vector<double> sorted(scaled.begin(), scaled.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw ValidationError("gamma fit input is degenerate (all values equal)");
    if (!(sorted.front() > 0.0) || !std::isfinite(sorted.back()))
        throw ValidationError("gamma fit input must be positive and finite");

    const int n_points = 50;
    const double x_lo = sorted.front();
    const double x_hi = sorted.back();
    std::vector<double> xs(n_points);
    double log_lo = std::log(x_lo);
    double step = (std::log(x_hi) - log_lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i)
        xs[i] = std::exp(log_lo + step * i);

    // Golden-section search; the survival objective is unimodal in gamma
    // around the best-fitting member.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.05 + 1e-9;
    double hi = 1.5;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = survival_objective(x1, sorted, xs);
    double f2 = survival_objective(x2, sorted, xs);
    for (int iter = 0; iter < 80 && hi - lo > 1e-7; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = survival_objective(x1, sorted, xs);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = survival_objective(x2, sorted, xs);
        }
    }

    GammaFit fit;
    fit.gamma = 0.5 * (lo + hi);
    fit.residual = survival_objective(fit.gamma, sorted, xs);
    fit.x_lo = x_lo;
    fit.x_hi = x_hi;
    fit.n_points = n_points;
    return fit;
}

} // namespace retscale
