#pragma once

#include <span>
#include <string>
#include <vector>

#include "wtfb/bounds.hpp"
#include "wtfb/channel.hpp"
#include "wtfb/sim/dmc_sim.hpp"

namespace wtfb::sim {

// Rates of the secrecy scheme, all in bits per channel symbol.
//   r1      message part sent in the clear (protected by binning)
//   r2      message part encrypted with the feedback key
//   r_prime uniform confusion randomness
//   r_star  help index carried to the next block
//   r_tilde total help codebook rate (>= r_star; bins of r_tilde - r_star)
struct RateAllocation {
    double r1 = 0.0;
    double r2 = 0.0;
    double r_prime = 0.0;
    double r_star = 0.0;
    double r_tilde = 0.0;
};

struct SimConfig {
    int n_blocks = 4;  // >= 3: first and last block are boundary blocks
    int block_len = 16;
    RateAllocation rates;
    double epsilon = 0.1;
    std::uint64_t seed = 42;
    int trials = 100;
    ExecMode exec = ExecMode::openmp;
};

struct RateRegionReport {
    std::vector<RateMargin> entries;
    double corner_message_rate_capacity;  // I(U;Y1): message-rate corner from the decode chain
    double corner_message_rate_secrecy;   // I(Y1,V;U) - I(Y2;U) + H(Y1|Y2,U): secrecy corner
    bool feasible = false;
    std::vector<std::string> violations() const;
};

// Evaluates the seven scheme inequalities against the information quantities
// of the assembled joint and reports the two derived message-rate corners.
RateRegionReport rate_region_check(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                   const RateAllocation& rates);

// Seeded uniform coloring of y1 blocks; key values in [0, key_count).
// Deterministic in (seed, block_index, y1_block) and known to all parties.
std::uint64_t generate_key_coloring(std::span<const int> y1_block, std::uint64_t block_index,
                                    std::uint64_t key_count, std::uint64_t seed);

// Throws rate_error when the key rate exceeds the extractable feedback
// randomness H(Y1|Y2,U) (the coloring-count regime).
void check_key_rate(const WiretapChannel& ch, const AuxiliarySystem& aux, double r2);

struct SimReport {
    int trials = 0;
    int message_errors = 0;
    double decode_error_rate = 0.0;
    int covering_attempts = 0;
    int covering_failures = 0;
    double encoder_failure_rate = 0.0;
    std::vector<std::uint64_t> key_histogram; // one cell per key value
    std::uint64_t key_total = 0;              // trials * (n_blocks - 2)
    double plug_in_equivocation_rate = 0.0;   // asymptotic expression at the realized rates
    double message_rate = 0.0;                // realized H(W)/(nN)
    std::uint64_t m1 = 0, m2 = 0, m_prime = 0, m_star = 0, m_tilde_per_bin = 0;
};

// Full secrecy scheme: keyed encryption of the second submessage, help
// codeword selection from the feedback, backward decoding. Throws rate_error
// when the configuration violates the rate region or the enumeration cap.
SimReport run_wiretap_feedback_sim(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                   const SimConfig& cfg);

// One encoded transmission without the decoding pass; the exact equivocation
// computation conditions on the y2 observations of real transcripts.
struct TrialTranscript {
    std::vector<std::vector<int>> y1, y2;         // per block
    std::vector<std::uint64_t> w1, w2, w_prime;   // drawn messages per block
    std::vector<std::uint64_t> keys;              // key used in blocks 1..n-2
    int covering_failures = 0;
};
TrialTranscript simulate_wiretap_trial(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                       const SimConfig& cfg, int trial);

} // namespace wtfb::sim
