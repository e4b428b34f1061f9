#pragma once

#include <cstdint>
#include <random>

namespace cam {

/// Root generator for a seed.
std::mt19937_64 make_rng(std::uint64_t seed);

/// Independent generator for one stream (e.g. one simulation repetition) of
/// a seed. Derivation is pure arithmetic, so stream i is the same no matter
/// which thread asks for it.
std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform draw from [0, n), n > 0, by rejection; unbiased and portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);

} // namespace cam
