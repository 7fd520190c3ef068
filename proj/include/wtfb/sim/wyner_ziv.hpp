#pragma once

#include "wtfb/parallel.hpp"
#include "wtfb/pmf.hpp"

namespace wtfb::sim {

// Quantize-and-bin source coding with decoder side information. The codebook
// holds `bins * per_bin` sequences drawn i.i.d. from the quantizer's output
// marginal; the encoder covers the source, transmits the bin index, and the
// decoder looks for the unique sequence in the bin that is jointly typical
// with its side information.
struct WzConfig {
    JointPmf source_law;      // P(x,y), axes (x, y)
    ConditionalPmf quantizer; // P(u|x)
    double rate_bins;         // R: bits/symbol carried by the bin index
    double rate_per_bin;      // R*: bits/symbol resolved by the side information
    int block_len = 64;
    double epsilon = 0.1;
    std::uint64_t seed = 42;
    int trials = 100;
    ExecMode exec = ExecMode::openmp;
};

struct WzTrialOutcome {
    bool encoder_covered;
    bool decoder_unique;
    bool reconstruction_typical; // the success criterion
};

struct WzReport {
    int trials = 0;
    int encoder_failures = 0;
    int decoder_failures = 0;
    int successes = 0;
    double success_rate = 0.0;
    std::uint64_t bins = 0;
    std::uint64_t per_bin = 0;
    double realized_rate_bins = 0.0;
    double realized_rate_per_bin = 0.0;
};

WzTrialOutcome wz_encode_decode_trial(const WzConfig& cfg, int trial);
WzReport run_wyner_ziv_sim(const WzConfig& cfg);

} // namespace wtfb::sim
