#pragma once

#include "wtfb/sim/wiretap_sim.hpp"

namespace wtfb::sim {

// Exact wiretapper posterior for small blocks: conditions on the observed y2
// of simulated transmissions and sums over every y1 path, confusion message,
// key value and help-codeword choice the codebooks allow. Tractable because
// the per-block sums run over |Y1|^N words; intended for N <= 8 and few
// blocks.
struct ExactEquivocationReport {
    int trials = 0;
    double message_rate = 0.0;                 // log2(#messages)/(nN)
    double mean_equivocation_rate = 0.0;       // mean of H(W | y2 observed)/(nN)
    double min_equivocation_rate = 0.0;
    std::vector<double> per_trial;
};

ExactEquivocationReport exact_small_equivocation(const WiretapChannel& ch,
                                                 const AuxiliarySystem& aux, const SimConfig& cfg,
                                                 int trials);

} // namespace wtfb::sim
