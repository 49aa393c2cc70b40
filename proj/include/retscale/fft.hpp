#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace retscale {

// Real-to-complex DFT, mixed radix, any length >= 1. Returns the n/2+1
// nonredundant coefficients.
std::vector<std::complex<double>> rfft(std::span<const double> x);

// Inverse of rfft for a real series of length n, normalized so that
// irfft(rfft(x), n) == x up to rounding.
std::vector<double> irfft(std::span<const std::complex<double>> spec, std::size_t n);

} // namespace retscale
