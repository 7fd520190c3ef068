#pragma once

#include <string>
#include <vector>

#include "wtfb/parallel.hpp"
#include "wtfb/pmf.hpp"

namespace wtfb::sim {

// Block-Markov feedback scheme for a plain channel P(y|x): each block's
// feedback is quantized into a help codeword v and the help index rides in
// the next block's x codeword; decoding runs backward from the last block.
struct DmcConfig {
    Pmf px;
    ConditionalPmf channel;     // P(y|x)
    ConditionalPmf helper;      // P(v|x,y)
    double rate_message;        // R
    double rate_help;           // R*: help index carried by the next block
    double rate_resolution;     // R**: per-bin resolution of the v codebook
    int n_blocks = 4;           // >= 3
    int block_len = 64;
    double epsilon = 0.1;
    std::uint64_t seed = 42;
    int trials = 50;
    ExecMode exec = ExecMode::openmp;
};

struct RateMargin {
    std::string label;   // constraint identifier
    std::string formula;
    double lhs, rhs;
    bool satisfied;
    double margin;       // rhs - lhs for upper constraints, lhs - rhs for lower
};

struct DmcReport {
    int trials = 0;
    int message_errors = 0;          // trials with any block message wrong
    double message_error_rate = 0.0;
    int covering_attempts = 0;
    int covering_failures = 0;
    double encoder_failure_rate = 0.0;
    std::uint64_t m_message = 0, m_help = 0, m_resolution = 0;
    std::vector<RateMargin> margins; // informational; violations are allowed
};

std::vector<RateMargin> dmc_rate_margins(const DmcConfig& cfg);
DmcReport run_dmc_feedback_sim(const DmcConfig& cfg);

} // namespace wtfb::sim
