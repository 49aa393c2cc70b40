#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace retscale {

struct SurrogateConfig {
    int iterations = 30;
    std::uint64_t rng_seed = 0;
    // When positive, iteration stops early once the spectrum distance to the
    // original falls below this value.
    double spectrum_tolerance = 0.0;
};

// Iterative amplitude-adjusted surrogate: starts from a seeded shuffle, then
// alternates imposing the original power spectrum (keeping current phases)
// with a rank remap onto the original values. The output's sorted values
// equal the input's exactly; its spectrum approaches the original's.
std::vector<double> make_surrogate(std::span<const double> v, const SurrogateConfig& cfg);

// Relative L2 distance between the DFT magnitude vectors of two equal-length
// series, zero-frequency term excluded.
double spectrum_distance(std::span<const double> a, std::span<const double> b);

} // namespace retscale
