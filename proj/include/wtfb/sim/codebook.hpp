#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wtfb/pmf.hpp"
#include "wtfb/rng.hpp"

namespace wtfb::sim {

// Seeded stream roles so independent draws never share a counter.
enum StreamRole : std::uint64_t {
    stream_u_codebook = 1,
    stream_x_superposition = 2,
    stream_v_codebook = 3,
    stream_channel = 4,
    stream_coloring = 5,
    stream_tie_break = 6,
    stream_message = 7,
    stream_source = 8,
    stream_x_codebook = 9
};

// Codewords are never stored: symbol t of codeword `index` in a given
// (seed, role, block) stream is a pure hash lookup through the inverse CDF.
inline int codeword_symbol(std::uint64_t seed, std::uint64_t role, std::uint64_t block,
                           std::uint64_t index, int t, std::span<const double> pmf) {
    const std::uint64_t h = hash_u64(seed, role, block, index, static_cast<std::uint64_t>(t));
    return sample_symbol(pmf, to_unit(h));
}

inline void fill_codeword(std::span<int> out, std::uint64_t seed, std::uint64_t role,
                          std::uint64_t block, std::uint64_t index, std::span<const double> pmf) {
    for (int t = 0; t < static_cast<int>(out.size()); ++t)
        out[static_cast<std::size_t>(t)] = codeword_symbol(seed, role, block, index, t, pmf);
}

// Superposition codeword: symbol t drawn from P(base | top_t).
inline int superposition_symbol(std::uint64_t seed, std::uint64_t role, std::uint64_t block,
                                std::uint64_t index, int t, const ConditionalPmf& p_given,
                                int cond_symbol) {
    const std::uint64_t h = hash_u64(seed, role, block, index, static_cast<std::uint64_t>(t));
    return sample_symbol(p_given.slice(static_cast<std::size_t>(cond_symbol)), to_unit(h));
}

// 2^{N r} rounded down to an integer codebook size, never below 1.
std::uint64_t codebook_size(double rate_bits_per_symbol, int block_len);

// Guard for the joint-typicality enumeration: callers reject configurations
// whose per-search index space exceeds this many bits.
inline constexpr double kMaxCodebookBits = 22.0;

void check_codebook_bits(double bits, const char* what);

} // namespace wtfb::sim
