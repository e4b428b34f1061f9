#include "cam/rng.hpp"

#include <stdexcept>

namespace cam {

namespace {

// splitmix64, the usual seed expander
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix(seed));
}

std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix(mix(seed) ^ mix(stream + 0x6a09e667f3bcc909ULL)));
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded: n must be positive");
    if (n == 1) return 0;
    std::uint64_t limit = ~0ULL - ~0ULL % n;
    for (;;) {
        std::uint64_t draw = rng();
        if (draw < limit) return draw % n;
    }
}

} // namespace cam
