#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace retscale {

// Parameters of the stretched-exponential scaling function
//
//     f(x) = c * exp(-(a*x)^gamma)
//
// where a and c are pinned by gamma through the unit-normalization and
// unit-mean constraints:
//
//     a = Gamma(2/gamma) / Gamma(1/gamma)
//     c = gamma * Gamma(2/gamma) / Gamma(1/gamma)^2
//
// gamma = 1 collapses to the pure exponential (a = c = 1).
struct StretchedExpParams {
    double gamma = 1.0;
    double a = 1.0;
    double c = 1.0;
};

// Computes a and c from gamma via log-Gamma arithmetic (Gamma(2/gamma)
// overflows direct evaluation for small gamma). Accepts gamma in (0, 2];
// values above 1 are outside the usual range for this family but valid.
StretchedExpParams params_from_gamma(double gamma);

double density(const StretchedExpParams& p, double x);

// Survival function S(x) = integral of the density over [x, inf), equal to
// the regularized upper incomplete gamma function Q(1/gamma, (a*x)^gamma).
// Strictly decreasing from S(0) = 1.
double survival(const StretchedExpParams& p, double x);

// Closed-form moment mu_m = (1/a) * {Gamma((m+1)/gamma)/Gamma(1/gamma)}^(1/m).
// Defined for m > -1, m != 0; mu_1 = 1 identically.
double analytic_moment(const StretchedExpParams& p, double m);

// n i.i.d. draws with density f, via the exact transform X = Y^(1/gamma) / a
// with Y a unit-scale gamma variate of shape 1/gamma. Deterministic for a
// given seed.
std::vector<double> sample(const StretchedExpParams& p, std::size_t n, std::uint64_t seed);

struct GammaFit {
    double gamma = 0.0;
    double residual = 0.0;  // sum of squared survival errors at the fit abscissae
    double x_lo = 0.0;      // fit range
    double x_hi = 0.0;
    int n_points = 0;
};

// One-parameter fit of the empirical survival curve of `scaled` to the
// stretched-exponential family: minimizes the squared survival residuals on
// logarithmically spaced abscissae by golden-section search on gamma in
// (0.05, 1.5]. Requires at least 100 samples.
GammaFit fit_gamma(std::span<const double> scaled);

} // namespace retscale
