#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace retscale {

// SplitMix64 output function. Bijective mixer with good avalanche; the basis
// for all substream seed derivation in this project.
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t fnv1a64(std::string_view s);

// Deterministic per-job seed: the master seed combined with an experiment tag
// and a tuple of indices (size, resolution bits, target index, realization
// index, ...). Changing any element yields an independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices);

} // namespace retscale
