#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wtfb/parallel.hpp"

namespace wtfb {

// Maximizer over a product of probability simplexes. Points are carried in
// "gauge" coordinates: a block of m probabilities has m-1 free coordinates in
// [0,1] mapped through stick-breaking, so clamped coordinate moves always stay
// on the simplex and the extreme points are reachable exactly.
//
// Strategy: evaluate a deterministic candidate pool (full product grid when
// the dimension allows it, otherwise a seeded Latin-hypercube sample, plus any
// caller-supplied structured seeds), run greedy coordinate ascent with step
// halving from the best `restarts` candidates, return the best point found.
// Ties break on candidate order, and parallel execution writes per-index
// slots, so results are identical for any worker count.

struct SimplexSpace {
    std::vector<int> block_sizes;

    int dof() const {
        int d = 0;
        for (int m : block_sizes) d += m - 1;
        return d;
    }
    std::size_t prob_len() const {
        std::size_t n = 0;
        for (int m : block_sizes) n += static_cast<std::size_t>(m);
        return n;
    }
    void decode(std::span<const double> gauge, std::span<double> probs) const;
    std::vector<double> encode(std::span<const double> probs) const;
};

struct AscentSettings {
    int grid_resolution = 9;          // points per free coordinate in the product grid
    std::size_t max_grid_points = 60000; // switch to stratified sampling beyond this
    int restarts = 16;
    int max_rounds = 80;              // coordinate sweeps per restart
    double initial_step = 0.25;
    double min_step = 1e-7;
    std::uint64_t seed = 42;
    ExecMode exec = ExecMode::openmp;
};

struct OptimizerTrace {
    std::size_t candidates = 0;
    int restarts = 0;
    std::vector<double> best_per_restart;
    std::size_t evaluations = 0;
};

struct MaximizeResult {
    double value = 0.0;
    std::vector<double> gauge;
    std::vector<double> probs;
    OptimizerTrace trace;
};

using ProbObjective = std::function<double(std::span<const double> probs)>;

MaximizeResult maximize_over_simplexes(const SimplexSpace& space, const ProbObjective& objective,
                                       const AscentSettings& settings,
                                       const std::vector<std::vector<double>>& seed_gauges = {});

} // namespace wtfb
