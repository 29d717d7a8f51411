#include "xrego/rng.hpp"

namespace xrego {

namespace {

// SplitMix64 finalizer; bijective, so distinct substreams stay distinct.
std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RngState RngState::derive(std::uint64_t substream) const noexcept {
    return RngState{seed, mix64(stream ^ mix64(substream))};
}

std::mt19937_64 RngState::engine() const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

double draw_normal(std::mt19937_64& eng) {
    std::normal_distribution<double> dist;
    return dist(eng);
}

double draw_uniform(std::mt19937_64& eng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(eng);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace xrego
