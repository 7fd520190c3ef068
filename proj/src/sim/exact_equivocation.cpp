#include "wtfb/sim/exact_equivocation.hpp"

#include <cmath>

#include "wiretap_internal.hpp"

namespace wtfb::sim {

namespace {

using detail::WtContext;

// Likelihood of one block: prod_t P(y1_t, y2_t | x_t) for the codeword behind
// u-index `l`, against a candidate y1 word and the observed y2 block.
struct BlockModel {
    const WtContext& cx;
    const WiretapChannel& ch;
    const AuxiliarySystem& aux;
    const SimConfig& cfg;
    int block;
    std::vector<std::vector<int>> x_cache; // x codeword per u-index
    std::vector<char> cached;

    BlockModel(const WtContext& cx_, const WiretapChannel& ch_, const AuxiliarySystem& aux_,
               const SimConfig& cfg_, int block_)
        : cx(cx_), ch(ch_), aux(aux_), cfg(cfg_), block(block_),
          x_cache(cx_.m_u, std::vector<int>()), cached(cx_.m_u, 0) {}

    const std::vector<int>& x_of(std::uint64_t l) {
        if (!cached[l]) {
            std::vector<int> u(static_cast<std::size_t>(cx.N));
            fill_codeword(u, cfg.seed, stream_u_codebook, static_cast<std::uint64_t>(block), l,
                          cx.pu);
            std::vector<int> x(static_cast<std::size_t>(cx.N));
            for (int t = 0; t < cx.N; ++t)
                x[static_cast<std::size_t>(t)] = superposition_symbol(
                    cfg.seed, stream_x_superposition, static_cast<std::uint64_t>(block), l, t,
                    aux.px_given_u, u[static_cast<std::size_t>(t)]);
            x_cache[l] = std::move(x);
            cached[l] = 1;
        }
        return x_cache[l];
    }

    double likelihood(std::uint64_t l, std::span<const int> y1_word,
                      std::span<const int> y2_obs) {
        const auto& x = x_of(l);
        double p = 1.0;
        for (int t = 0; t < cx.N; ++t) {
            p *= ch.prob(x[static_cast<std::size_t>(t)], y1_word[static_cast<std::size_t>(t)],
                         y2_obs[static_cast<std::size_t>(t)]);
            if (p == 0.0) return 0.0;
        }
        return p;
    }
};

// distribution of the selected help-bin given (u-codeword, y1 word):
// uniform over the jointly typical set, or uniform over everything when the
// covering fails.
void help_bin_distribution(const WtContext& cx, const SimConfig& cfg,
                           const TypicalityWindow& w_uy1v, int block,
                           std::span<const int> u_word, std::span<const int> y1_word,
                           std::span<double> out_bin_prob) {
    std::vector<int> counts(w_uy1v.cells());
    std::vector<std::uint64_t> per_bin_hits(static_cast<std::size_t>(cx.ms), 0);
    std::uint64_t hits = 0;
    for (std::uint64_t c = 0; c < cx.m_v; ++c) {
        std::fill(counts.begin(), counts.end(), 0);
        bool pruned = false;
        for (int t = 0; t < cx.N; ++t) {
            const int v = codeword_symbol(cfg.seed, stream_v_codebook,
                                          static_cast<std::uint64_t>(block), c, t, cx.pv);
            const int cell = (u_word[static_cast<std::size_t>(t)] * cx.ny1 +
                              y1_word[static_cast<std::size_t>(t)]) * cx.nv + v;
            if (++counts[static_cast<std::size_t>(cell)] > w_uy1v.ceiling(cell)) {
                pruned = true;
                break;
            }
        }
        if (!pruned && w_uy1v.check(counts)) {
            ++hits;
            ++per_bin_hits[static_cast<std::size_t>(c / cx.md)];
        }
    }
    if (hits > 0) {
        for (std::uint64_t b = 0; b < cx.ms; ++b)
            out_bin_prob[static_cast<std::size_t>(b)] =
                static_cast<double>(per_bin_hits[static_cast<std::size_t>(b)]) /
                static_cast<double>(hits);
    } else {
        for (std::uint64_t b = 0; b < cx.ms; ++b)
            out_bin_prob[static_cast<std::size_t>(b)] = 1.0 / static_cast<double>(cx.ms);
    }
}

} // namespace

ExactEquivocationReport exact_small_equivocation(const WiretapChannel& ch,
                                                 const AuxiliarySystem& aux, const SimConfig& cfg,
                                                 int trials) {
    const WtContext cx(ch, aux, cfg);
    const int n = cx.n, N = cx.N;

    double y1_words_d = 1.0;
    for (int t = 0; t < N; ++t) y1_words_d *= cx.ny1;
    const double n_messages_d =
        std::pow(static_cast<double>(cx.m1), n - 1) * std::pow(static_cast<double>(cx.m2), n - 2);
    const double state_count = static_cast<double>(cx.m2) * static_cast<double>(cx.ms);
    const double work = static_cast<double>(n) * n_messages_d * state_count *
                        static_cast<double>(cx.mp) * y1_words_d * N *
                        std::max<double>(1.0, static_cast<double>(cx.m_v));
    if (work > 2e9 || n_messages_d > 65536.0 || cx.m_u > 65536)
        throw validation_error(
            "exact equivocation: configuration too large for brute-force posterior (work estimate " +
            std::to_string(work) + ")");

    const auto y1_words = static_cast<std::uint64_t>(y1_words_d);
    const auto n_messages = static_cast<std::uint64_t>(n_messages_d);
    const TypicalityWindow w_uy1v(cx.p_uy1v, N, cfg.epsilon);

    // enumerate y1 words once
    std::vector<std::vector<int>> words(y1_words, std::vector<int>(static_cast<std::size_t>(N)));
    for (std::uint64_t w = 0; w < y1_words; ++w) {
        std::uint64_t r = w;
        for (int t = 0; t < N; ++t) {
            words[w][static_cast<std::size_t>(t)] = static_cast<int>(r % cx.ny1);
            r /= cx.ny1;
        }
    }

    ExactEquivocationReport rep;
    rep.trials = trials;
    rep.message_rate = std::log2(n_messages_d) / (static_cast<double>(n) * N);
    rep.per_trial.resize(static_cast<std::size_t>(trials));

    for_each_index(static_cast<std::size_t>(trials), cfg.exec, [&](std::size_t trial_i) {
        const auto et = detail::encode_trial(cx, ch, aux, cfg, static_cast<std::uint64_t>(trial_i));

        // per-block codeword models against the observed y2
        std::vector<BlockModel> models;
        models.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) models.emplace_back(cx, ch, aux, cfg, i);

        std::vector<double> post(n_messages, 0.0);
        double total = 0.0;

        for (std::uint64_t m = 0; m < n_messages; ++m) {
            // unpack message: w1 for blocks 0..n-2, then w2 for blocks 1..n-2
            std::uint64_t r = m;
            std::vector<std::uint64_t> w1(static_cast<std::size_t>(n), 0),
                w2(static_cast<std::size_t>(n), 0);
            for (int i = 0; i + 1 < n; ++i) {
                w1[static_cast<std::size_t>(i)] = r % cx.m1;
                r /= cx.m1;
            }
            for (int i = 1; i + 1 < n; ++i) {
                w2[static_cast<std::size_t>(i)] = r % cx.m2;
                r /= cx.m2;
            }

            // phi[state]: state = key_next * ms + ws_i after processing block i
            std::vector<double> phi(static_cast<std::size_t>(cx.m2 * cx.ms), 0.0);
            std::vector<double> next(static_cast<std::size_t>(cx.m2 * cx.ms), 0.0);
            std::vector<double> bin_prob(static_cast<std::size_t>(cx.ms));
            std::vector<int> u_word(static_cast<std::size_t>(N));

            for (int i = 0; i < n; ++i) {
                std::fill(next.begin(), next.end(), 0.0);
                const auto& y2_obs = et.y2s[static_cast<std::size_t>(i)];

                // states entering block i; boundary blocks collapse the loops
                const std::uint64_t keys_in = (i >= 1 && i + 1 < n) ? cx.m2 : 1;
                const std::uint64_t ws_in = (i >= 1) ? cx.ms : 1;
                const std::uint64_t wps = (i + 1 < n) ? cx.mp : 1; // last block pins w'
                const double wp_weight = 1.0 / static_cast<double>(wps);

                for (std::uint64_t k_in = 0; k_in < keys_in; ++k_in) {
                    for (std::uint64_t ws_prev = 0; ws_prev < ws_in; ++ws_prev) {
                        double mass_in = 1.0;
                        if (i >= 1) {
                            // fold states that differ only in unused key bits
                            mass_in = 0.0;
                            if (keys_in == cx.m2) {
                                mass_in = phi[static_cast<std::size_t>(k_in * cx.ms + ws_prev)];
                            } else {
                                for (std::uint64_t k = 0; k < cx.m2; ++k)
                                    mass_in += phi[static_cast<std::size_t>(k * cx.ms + ws_prev)];
                            }
                        }
                        if (mass_in == 0.0) continue;

                        for (std::uint64_t wp = 0; wp < wps; ++wp) {
                            std::uint64_t l;
                            if (i == 0)
                                l = cx.u_index(w1[0], 0, wp, 0);
                            else if (i + 1 < n)
                                l = cx.u_index(w1[static_cast<std::size_t>(i)],
                                               (w2[static_cast<std::size_t>(i)] + k_in) % cx.m2, wp,
                                               ws_prev);
                            else
                                l = cx.u_index(0, 0, 0, ws_prev);

                            // u codeword for the help-selection typicality
                            fill_codeword(u_word, cfg.seed, stream_u_codebook,
                                          static_cast<std::uint64_t>(i), l, cx.pu);

                            for (std::uint64_t yw = 0; yw < y1_words; ++yw) {
                                const double like =
                                    models[static_cast<std::size_t>(i)].likelihood(
                                        l, words[yw], y2_obs);
                                if (like == 0.0) continue;
                                const double mass = mass_in * wp_weight * like;

                                if (i + 1 < n) {
                                    // key consumed by block i+1 when it carries w2
                                    const std::uint64_t k_next =
                                        (i + 2 < n) ? generate_key_coloring(
                                                          words[yw],
                                                          static_cast<std::uint64_t>(i + 1), cx.m2,
                                                          cfg.seed)
                                                    : 0;
                                    help_bin_distribution(cx, cfg, w_uy1v, i, u_word, words[yw],
                                                          bin_prob);
                                    for (std::uint64_t b = 0; b < cx.ms; ++b) {
                                        const double pb = bin_prob[static_cast<std::size_t>(b)];
                                        if (pb > 0.0)
                                            next[static_cast<std::size_t>(k_next * cx.ms + b)] +=
                                                mass * pb;
                                    }
                                } else {
                                    next[0] += mass;
                                }
                            }
                        }
                    }
                }
                std::swap(phi, next);
            }

            double pm = 0.0;
            for (double v : phi) pm += v;
            post[m] = pm;
            total += pm;
        }

        double h = 0.0;
        if (total > 0.0) {
            for (double v : post) {
                if (v > 0.0) {
                    const double p = v / total;
                    h -= p * std::log2(p);
                }
            }
        }
        rep.per_trial[trial_i] = h / (static_cast<double>(n) * N);
    });

    double sum = 0.0, mn = 1e300;
    for (double v : rep.per_trial) {
        sum += v;
        mn = std::min(mn, v);
    }
    rep.mean_equivocation_rate = trials > 0 ? sum / trials : 0.0;
    rep.min_equivocation_rate = trials > 0 ? mn : 0.0;
    return rep;
}

} // namespace wtfb::sim
