#include "wtfb/sim/codebook.hpp"

#include <cmath>
#include <string>

#include "wtfb/errors.hpp"

namespace wtfb::sim {

std::uint64_t codebook_size(double rate_bits_per_symbol, int block_len) {
    if (rate_bits_per_symbol < 0.0)
        throw validation_error("codebook_size: negative rate");
    const double bits = rate_bits_per_symbol * block_len;
    if (bits > 62.0) return std::uint64_t{1} << 62; // caught by the bits guard later
    const double m = std::floor(std::exp2(bits) + 1e-9);
    return m < 1.0 ? 1 : static_cast<std::uint64_t>(m);
}

void check_codebook_bits(double bits, const char* what) {
    if (bits > kMaxCodebookBits + 1e-9)
        throw rate_error(std::string(what) + ": codebook index space of " + std::to_string(bits) +
                             " bits exceeds the " + std::to_string(kMaxCodebookBits) +
                             "-bit enumeration cap",
                         {std::string(what) + " codebook too large (" + std::to_string(bits) +
                          " bits > " + std::to_string(kMaxCodebookBits) + ")"});
}

} // namespace wtfb::sim
