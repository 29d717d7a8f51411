#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace xrego {

// Seeded, splittable RNG state. Every randomized operation takes an RngState
// by value and derives whatever substreams it needs; there is no global RNG
// and no shared mutable generator. Two states with distinct stream ids
// produce statistically independent engines.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    // Child state for an independent unit of work (trial, cell, embedding).
    [[nodiscard]] RngState derive(std::uint64_t substream) const noexcept;

    // Engine seeded from (seed, stream). mt19937_64 and seed_seq are fully
    // specified by the standard, so the byte stream is reproducible.
    [[nodiscard]] std::mt19937_64 engine() const;
};

double draw_normal(std::mt19937_64& eng);
double draw_uniform(std::mt19937_64& eng, double lo, double hi);

// FNV-1a, used to map string identifiers (problem/algorithm/seed tuples)
// onto substream ids independently of iteration order.
std::uint64_t fnv1a(const std::string& s);

}  // namespace xrego
