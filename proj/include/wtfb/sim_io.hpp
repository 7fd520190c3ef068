#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wtfb/io.hpp"
#include "wtfb/sim/dmc_sim.hpp"
#include "wtfb/sim/exact_equivocation.hpp"
#include "wtfb/sim/wiretap_sim.hpp"
#include "wtfb/sim/wyner_ziv.hpp"

namespace wtfb::io {

enum class SimMode { wynerziv, dmc, wiretap };
const char* to_string(SimMode m);

// Parsed form of the simulation config file. `block_lens` may hold several N
// values; the runner then emits a per-N trend table, repeating each point
// over `seed_reps` derived seeds.
struct ParsedSimConfig {
    SimMode mode;
    std::vector<int> block_lens;
    int seed_reps = 1;
    std::uint64_t seed = 42;
    int trials = 100;
    double epsilon = 0.1;

    // wiretap mode
    std::optional<WiretapChannel> channel;
    std::optional<AuxiliarySystem> aux;
    sim::RateAllocation rates;
    int n_blocks = 4;
    int exact_small_trials = 0; // > 0 enables the exact posterior computation

    // dmc mode
    std::optional<Pmf> px;
    std::optional<ConditionalPmf> dmc_channel;
    std::optional<ConditionalPmf> helper;
    double rate_message = 0, rate_help = 0, rate_resolution = 0;

    // wynerziv mode
    std::optional<JointPmf> source_law;
    std::optional<ConditionalPmf> quantizer;
    double rate_bins = 0, rate_per_bin = 0;
};

ParsedSimConfig parse_sim_config(const std::string& text, const std::string& origin);
ParsedSimConfig load_sim_config(const std::string& path);

struct SimRunOutput {
    std::string report_json; // full report including the config echo
    CsvTable trend;          // one row per (N, seed)
};

// Executes the parsed config (all N values, all seed repetitions) and builds
// the serialized report. Mode `wiretap` throws rate_error on infeasible rates.
SimRunOutput run_sim_from_config(const ParsedSimConfig& cfg, const RunManifest& manifest,
                                 ExecMode exec);

} // namespace wtfb::io
