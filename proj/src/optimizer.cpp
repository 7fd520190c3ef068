#include "wtfb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wtfb/errors.hpp"
#include "wtfb/rng.hpp"

namespace wtfb {

void SimplexSpace::decode(std::span<const double> gauge, std::span<double> probs) const {
    std::size_t gi = 0, pi = 0;
    for (int m : block_sizes) {
        double remaining = 1.0;
        for (int k = 0; k < m - 1; ++k) {
            const double g = gauge[gi++];
            probs[pi++] = remaining * g;
            remaining *= (1.0 - g);
        }
        probs[pi++] = remaining;
    }
}

std::vector<double> SimplexSpace::encode(std::span<const double> probs) const {
    std::vector<double> gauge;
    gauge.reserve(static_cast<std::size_t>(dof()));
    std::size_t pi = 0;
    for (int m : block_sizes) {
        double remaining = 1.0;
        for (int k = 0; k < m - 1; ++k) {
            const double p = probs[pi++];
            double g = remaining > 1e-300 ? p / remaining : 0.0;
            g = std::clamp(g, 0.0, 1.0);
            gauge.push_back(g);
            remaining *= (1.0 - g);
        }
        ++pi; // last entry implied
    }
    return gauge;
}

namespace {

struct Evaluator {
    const SimplexSpace& space;
    const ProbObjective& objective;

    double operator()(std::span<const double> gauge, std::vector<double>& scratch) const {
        space.decode(gauge, scratch);
        return objective(scratch);
    }
};

// Greedy per-coordinate ascent with step halving. The objectives are mins of
// two arms, so optima sit on ridges where single-coordinate moves stall;
// before shrinking the step, paired two-coordinate moves and seeded random
// directions probe along the ridge. `stream` keeps the probe directions a
// pure function of (seed, restart), independent of thread scheduling.
std::size_t ascend(const Evaluator& eval, std::vector<double>& g, double& value,
                   const AscentSettings& s, std::uint64_t stream) {
    std::vector<double> scratch(eval.space.prob_len());
    std::size_t evals = 0;
    double step = s.initial_step;
    const int d = static_cast<int>(g.size());
    const bool pair_moves = d <= 12;

    auto try_move = [&](std::span<const int> coords, std::span<const int> dirs) {
        bool moved = false;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            const auto j = static_cast<std::size_t>(coords[k]);
            const double trial = std::clamp(g[j] + dirs[k] * step, 0.0, 1.0);
            if (trial != g[j]) moved = true;
        }
        if (!moved) return false;
        std::vector<double> keep;
        keep.reserve(coords.size());
        for (std::size_t k = 0; k < coords.size(); ++k) {
            const auto j = static_cast<std::size_t>(coords[k]);
            keep.push_back(g[j]);
            g[j] = std::clamp(g[j] + dirs[k] * step, 0.0, 1.0);
        }
        const double v = eval(g, scratch);
        ++evals;
        if (v > value) {
            value = v;
            return true;
        }
        for (std::size_t k = 0; k < coords.size(); ++k)
            g[static_cast<std::size_t>(coords[k])] = keep[k];
        return false;
    };

    for (int round = 0; round < s.max_rounds && step >= s.min_step;) {
        bool improved = false;
        for (int j = 0; j < d; ++j) {
            for (int dir : {+1, -1}) {
                const int coords[] = {j};
                const int dirs[] = {dir};
                if (try_move(coords, dirs)) improved = true;
            }
        }
        if (!improved && pair_moves) {
            for (int a = 0; a < d && !improved; ++a)
                for (int b = a + 1; b < d && !improved; ++b)
                    for (int da : {+1, -1})
                        for (int db : {+1, -1}) {
                            const int coords[] = {a, b};
                            const int dirs[] = {da, db};
                            if (try_move(coords, dirs)) {
                                improved = true;
                                break;
                            }
                        }
        }
        if (!improved) {
            // seeded full-dimension probes for ridges not aligned with pairs
            SplitMix rng(hash_u64(s.seed, stream, static_cast<std::uint64_t>(round),
                                  static_cast<std::uint64_t>(step * 1e9)));
            std::vector<double> dir(static_cast<std::size_t>(d));
            std::vector<double> keep(static_cast<std::size_t>(d));
            for (int probe = 0; probe < 2 * d && !improved; ++probe) {
                double norm = 0.0;
                for (int j = 0; j < d; ++j) {
                    dir[static_cast<std::size_t>(j)] = 2.0 * rng.next_unit() - 1.0;
                    norm += dir[static_cast<std::size_t>(j)] * dir[static_cast<std::size_t>(j)];
                }
                norm = std::sqrt(std::max(norm, 1e-30));
                keep = g;
                bool moved = false;
                for (int j = 0; j < d; ++j) {
                    const double t = std::clamp(
                        g[static_cast<std::size_t>(j)] +
                            step * dir[static_cast<std::size_t>(j)] / norm,
                        0.0, 1.0);
                    if (t != g[static_cast<std::size_t>(j)]) moved = true;
                    g[static_cast<std::size_t>(j)] = t;
                }
                if (!moved) continue;
                const double v = eval(g, scratch);
                ++evals;
                if (v > value) {
                    value = v;
                    improved = true;
                } else {
                    g = keep;
                }
            }
        }
        if (improved) {
            ++round;
        } else {
            step *= 0.5;
        }
    }
    return evals;
}

} // namespace

MaximizeResult maximize_over_simplexes(const SimplexSpace& space, const ProbObjective& objective,
                                       const AscentSettings& settings,
                                       const std::vector<std::vector<double>>& seed_gauges) {
    const int d = space.dof();
    const Evaluator eval{space, objective};
    MaximizeResult out;

    if (d == 0) {
        std::vector<double> probs(space.prob_len());
        space.decode({}, probs);
        out.value = objective(probs);
        out.probs = std::move(probs);
        out.trace.candidates = 1;
        out.trace.evaluations = 1;
        return out;
    }

    // Candidate pool: structured seeds first (they are the sharpest guesses),
    // then either the full product grid or a Latin-hypercube sample.
    std::vector<std::vector<double>> pool;
    for (const auto& sg : seed_gauges) {
        if (static_cast<int>(sg.size()) != d)
            throw validation_error("optimizer seed has wrong dimension");
        pool.push_back(sg);
    }

    const int res = std::max(2, settings.grid_resolution);
    double grid_total = 1.0;
    for (int j = 0; j < d; ++j) grid_total *= res;
    if (grid_total <= static_cast<double>(settings.max_grid_points)) {
        const std::size_t total = static_cast<std::size_t>(grid_total);
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        std::vector<double> g(static_cast<std::size_t>(d));
        for (std::size_t t = 0; t < total; ++t) {
            for (int j = 0; j < d; ++j)
                g[static_cast<std::size_t>(j)] =
                    static_cast<double>(idx[static_cast<std::size_t>(j)]) / (res - 1);
            pool.push_back(g);
            for (int j = d - 1; j >= 0; --j) {
                if (++idx[static_cast<std::size_t>(j)] < res) break;
                idx[static_cast<std::size_t>(j)] = 0;
            }
        }
    } else {
        const std::size_t samples = settings.max_grid_points;
        // per-coordinate stratified permutations
        std::vector<std::vector<std::uint32_t>> perm(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            auto& pj = perm[static_cast<std::size_t>(j)];
            pj.resize(samples);
            std::iota(pj.begin(), pj.end(), 0u);
            SplitMix rng(hash_u64(settings.seed, 0x5747u, static_cast<std::uint64_t>(j)));
            for (std::size_t k = samples; k > 1; --k)
                std::swap(pj[k - 1], pj[rng.next_below(k)]);
        }
        std::vector<double> g(static_cast<std::size_t>(d));
        for (std::size_t t = 0; t < samples; ++t) {
            for (int j = 0; j < d; ++j)
                g[static_cast<std::size_t>(j)] =
                    (static_cast<double>(perm[static_cast<std::size_t>(j)][t]) + 0.5) / samples;
            pool.push_back(g);
        }
    }

    std::vector<double> values(pool.size());
    for_each_index(pool.size(), settings.exec, [&](std::size_t i) {
        std::vector<double> scratch(space.prob_len());
        values[i] = eval(pool[i], scratch);
    });
    out.trace.candidates = pool.size();
    out.trace.evaluations = pool.size();

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;
    });

    const int restarts = std::max(1, std::min<int>(settings.restarts,
                                                   static_cast<int>(pool.size())));
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<std::size_t>(restarts));
    for (std::size_t k = 0; k < order.size() && static_cast<int>(starts.size()) < restarts; ++k) {
        const auto& cand = pool[order[k]];
        bool dup = false;
        for (const auto& s : starts)
            if (s == cand) { dup = true; break; }
        if (!dup) starts.push_back(cand);
    }

    // one re-evaluation per restart instead of index bookkeeping into the pool
    std::vector<double> start_values(starts.size());
    for_each_index(starts.size(), settings.exec, [&](std::size_t k) {
        std::vector<double> scratch(space.prob_len());
        start_values[k] = eval(starts[k], scratch);
    });

    std::vector<double> final_values(starts.size());
    std::vector<std::size_t> final_evals(starts.size());
    for_each_index(starts.size(), settings.exec, [&](std::size_t k) {
        double v = start_values[k];
        final_evals[k] = ascend(eval, starts[k], v, settings, static_cast<std::uint64_t>(k) + 1);
        final_values[k] = v;
    });

    out.trace.restarts = static_cast<int>(starts.size());
    out.trace.best_per_restart = final_values;
    for (std::size_t k = 0; k < starts.size(); ++k) out.trace.evaluations += final_evals[k] + 1;

    std::size_t best = 0;
    for (std::size_t k = 1; k < starts.size(); ++k)
        if (final_values[k] > final_values[best]) best = k;

    out.value = final_values[best];
    out.gauge = starts[best];
    out.probs.resize(space.prob_len());
    space.decode(out.gauge, out.probs);
    return out;
}

} // namespace wtfb
