#include "wtfb/sim/wiretap_sim.hpp"

#include <cmath>

#include "wiretap_internal.hpp"

namespace wtfb::sim {

namespace detail {

WtContext::WtContext(const WiretapChannel& ch, const AuxiliarySystem& aux, const SimConfig& cfg) {
    nu = aux.u_size;
    nv = aux.v_size;
    nx = ch.x_size();
    ny1 = ch.y1_size();
    ny2 = ch.y2_size();
    n = cfg.n_blocks;
    N = cfg.block_len;
    if (n < 3) throw validation_error("wiretap sim: need at least 3 blocks");
    if (N < 1) throw validation_error("wiretap sim: block length must be >= 1");
    if (!(cfg.epsilon > 0.0)) throw validation_error("wiretap sim: epsilon must be positive");
    if (cfg.rates.r_tilde < cfg.rates.r_star - 1e-12)
        throw validation_error("wiretap sim: r_tilde must be >= r_star");

    m1 = codebook_size(cfg.rates.r1, N);
    m2 = codebook_size(cfg.rates.r2, N);
    mp = codebook_size(cfg.rates.r_prime, N);
    ms = codebook_size(cfg.rates.r_star, N);
    md = codebook_size(cfg.rates.r_tilde - cfg.rates.r_star, N);
    m_u = m1 * m2 * mp * ms;
    m_v = ms * md;
    check_codebook_bits(std::log2(static_cast<double>(m_u)), "wiretap u");
    check_codebook_bits(std::log2(static_cast<double>(m_v)), "wiretap v");

    const JointPmf j = aux.joint(ch);
    pu.assign(aux.pu.probs().begin(), aux.pu.probs().end());
    p_uy1.assign(static_cast<std::size_t>(nu) * ny1, 0.0);
    p_y1v.assign(static_cast<std::size_t>(ny1) * nv, 0.0);
    p_uy1v.assign(static_cast<std::size_t>(nu) * ny1 * nv, 0.0);
    pv.assign(static_cast<std::size_t>(nv), 0.0);
    std::vector<int> idx(5);
    for (int u = 0; u < nu; ++u)
        for (int v = 0; v < nv; ++v)
            for (int x = 0; x < nx; ++x)
                for (int y1 = 0; y1 < ny1; ++y1)
                    for (int y2 = 0; y2 < ny2; ++y2) {
                        idx = {u, v, x, y1, y2};
                        const double p = j.at(idx);
                        p_uy1[static_cast<std::size_t>(u) * ny1 + y1] += p;
                        p_y1v[static_cast<std::size_t>(y1) * nv + v] += p;
                        p_uy1v[(static_cast<std::size_t>(u) * ny1 + y1) * nv + v] += p;
                        pv[static_cast<std::size_t>(v)] += p;
                    }
}

EncodedTrial encode_trial(const WtContext& cx, const WiretapChannel& ch,
                          const AuxiliarySystem& aux, const SimConfig& cfg, std::uint64_t trial) {
    const int n = cx.n, N = cx.N;
    const TypicalityWindow w_uy1v(cx.p_uy1v, N, cfg.epsilon);

    EncodedTrial et;
    et.us.assign(static_cast<std::size_t>(n), std::vector<int>(N));
    et.xs.assign(static_cast<std::size_t>(n), std::vector<int>(N));
    et.y1s.assign(static_cast<std::size_t>(n), std::vector<int>(N));
    et.y2s.assign(static_cast<std::size_t>(n), std::vector<int>(N));
    et.u_index.assign(static_cast<std::size_t>(n), 0);
    et.w1.assign(static_cast<std::size_t>(n), 0);
    et.w2.assign(static_cast<std::size_t>(n), 0);
    et.wp.assign(static_cast<std::size_t>(n), 0);
    et.keys.assign(static_cast<std::size_t>(n), 0);
    et.true_ws.assign(static_cast<std::size_t>(n), 0);

    for (int i = 0; i + 1 < n; ++i) {
        et.w1[static_cast<std::size_t>(i)] =
            hash_u64(cfg.seed, stream_message, trial, static_cast<std::uint64_t>(i), 1) % cx.m1;
        et.wp[static_cast<std::size_t>(i)] =
            hash_u64(cfg.seed, stream_message, trial, static_cast<std::uint64_t>(i), 3) % cx.mp;
        if (i >= 1)
            et.w2[static_cast<std::size_t>(i)] =
                hash_u64(cfg.seed, stream_message, trial, static_cast<std::uint64_t>(i), 2) % cx.m2;
    }

    auto transmit = [&](int block) {
        auto& ub = et.us[static_cast<std::size_t>(block)];
        auto& xb = et.xs[static_cast<std::size_t>(block)];
        const std::uint64_t l = et.u_index[static_cast<std::size_t>(block)];
        fill_codeword(ub, cfg.seed, stream_u_codebook, static_cast<std::uint64_t>(block), l, cx.pu);
        for (int t = 0; t < N; ++t) {
            xb[static_cast<std::size_t>(t)] =
                superposition_symbol(cfg.seed, stream_x_superposition,
                                     static_cast<std::uint64_t>(block), l, t, aux.px_given_u,
                                     ub[static_cast<std::size_t>(t)]);
            const double u01 = to_unit(hash_u64(cfg.seed, stream_channel, trial,
                                                static_cast<std::uint64_t>(block * N + t)));
            const int pair = sample_symbol(
                ch.law().slice(static_cast<std::size_t>(xb[static_cast<std::size_t>(t)])), u01);
            et.y1s[static_cast<std::size_t>(block)][static_cast<std::size_t>(t)] = pair / cx.ny2;
            et.y2s[static_cast<std::size_t>(block)][static_cast<std::size_t>(t)] = pair % cx.ny2;
        }
    };

    et.u_index[0] = cx.u_index(et.w1[0], 0, et.wp[0], 0);
    transmit(0);

    for (int i = 1; i < n; ++i) {
        const auto& ub = et.us[static_cast<std::size_t>(i - 1)];
        const auto& yb = et.y1s[static_cast<std::size_t>(i - 1)];
        std::uint64_t chosen = 0;
        std::uint64_t hits = 0;
        std::vector<int> counts(w_uy1v.cells());
        for (std::uint64_t c = 0; c < cx.m_v; ++c) {
            std::fill(counts.begin(), counts.end(), 0);
            bool pruned = false;
            for (int t = 0; t < N; ++t) {
                const int v = codeword_symbol(cfg.seed, stream_v_codebook,
                                              static_cast<std::uint64_t>(i - 1), c, t, cx.pv);
                const int cell =
                    (ub[static_cast<std::size_t>(t)] * cx.ny1 + yb[static_cast<std::size_t>(t)]) *
                        cx.nv + v;
                if (++counts[static_cast<std::size_t>(cell)] > w_uy1v.ceiling(cell)) {
                    pruned = true;
                    break;
                }
            }
            if (!pruned && w_uy1v.check(counts)) {
                ++hits;
                const double u01 = to_unit(hash_u64(cfg.seed, stream_tie_break, trial,
                                                    static_cast<std::uint64_t>(i - 1), c));
                if (u01 * static_cast<double>(hits) < 1.0) chosen = c;
            }
        }
        if (hits == 0) {
            ++et.cover_fail;
            chosen = hash_u64(cfg.seed, stream_tie_break, trial, static_cast<std::uint64_t>(i - 1),
                              0xfa11u) % cx.m_v;
        }
        et.true_ws[static_cast<std::size_t>(i - 1)] = chosen / cx.md;

        if (i + 1 < n) {
            et.keys[static_cast<std::size_t>(i)] = generate_key_coloring(
                et.y1s[static_cast<std::size_t>(i - 1)], static_cast<std::uint64_t>(i), cx.m2,
                cfg.seed);
            const std::uint64_t w2x =
                (et.w2[static_cast<std::size_t>(i)] + et.keys[static_cast<std::size_t>(i)]) % cx.m2;
            et.u_index[static_cast<std::size_t>(i)] =
                cx.u_index(et.w1[static_cast<std::size_t>(i)], w2x, et.wp[static_cast<std::size_t>(i)],
                           et.true_ws[static_cast<std::size_t>(i - 1)]);
        } else {
            et.u_index[static_cast<std::size_t>(i)] =
                cx.u_index(0, 0, 0, et.true_ws[static_cast<std::size_t>(i - 1)]);
        }
        transmit(i);
    }
    return et;
}

} // namespace detail

std::uint64_t generate_key_coloring(std::span<const int> y1_block, std::uint64_t block_index,
                                    std::uint64_t key_count, std::uint64_t seed) {
    if (key_count == 0) throw validation_error("key coloring: key_count must be >= 1");
    if (key_count == 1) return 0;
    std::uint64_t h = hash_u64(seed, stream_coloring, block_index);
    for (int s : y1_block) h = hash_combine(h, static_cast<std::uint64_t>(s) + 0x1001);
    return h % key_count;
}

void check_key_rate(const WiretapChannel& ch, const AuxiliarySystem& aux, double r2) {
    const JointPmf j = aux.joint(ch);
    static constexpr int Y1[] = {3};
    static constexpr int Y2U[] = {4, 0};
    const double h = conditional_entropy(j, Y1, Y2U);
    if (r2 > h + 1e-9)
        throw rate_error(
            "key rate infeasible: r2 = " + std::to_string(r2) +
                " exceeds the extractable feedback randomness H(Y1|Y2,U) = " + std::to_string(h) +
                " (coloring count bound, constraint \"zhenni1\")",
            {"zhenni1: r2 <= H(Y1|Y2,U) violated (" + std::to_string(r2) + " > " +
             std::to_string(h) + ")"});
}

RateRegionReport rate_region_check(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                   const RateAllocation& r) {
    const JointPmf j = aux.joint(ch);
    static constexpr int U[] = {0};
    static constexpr int V[] = {1};
    static constexpr int Y1[] = {3};
    static constexpr int Y2[] = {4};
    static constexpr int UY1[] = {0, 3};
    static constexpr int Y1V[] = {3, 1};
    static constexpr int Y2U[] = {4, 0};

    const double i_uy1_v = mutual_information(j, UY1, V);
    const double i_y1_u = mutual_information(j, Y1, U);
    const double i_y1_v = mutual_information(j, Y1, V);
    const double i_y1v_u = mutual_information(j, Y1V, U);
    const double i_y2_u = mutual_information(j, Y2, U);
    const double h_y1_y2u = conditional_entropy(j, Y1, Y2U);
    const double i_v_u_y1 = conditional_mutual_information(j, V, U, Y1);

    auto upper = [](std::string label, std::string formula, double lhs, double rhs) {
        return RateMargin{std::move(label), std::move(formula), lhs, rhs, lhs <= rhs + 1e-9,
                          rhs - lhs};
    };
    auto lower = [](std::string label, std::string formula, double lhs, double rhs) {
        return RateMargin{std::move(label), std::move(formula), lhs, rhs, lhs >= rhs - 1e-9,
                          lhs - rhs};
    };

    RateRegionReport rep;
    rep.entries = {
        lower("app1", "r_tilde >= I(U,Y1;V)", r.r_tilde, i_uy1_v),
        upper("app2", "r_star <= I(Y1;U)", r.r_star, i_y1_u),
        upper("app3", "r_tilde - r_star <= I(Y1;V)", r.r_tilde - r.r_star, i_y1_v),
        upper("app4", "r1 + r2 + r_prime + r_star <= I(Y1,V;U)",
              r.r1 + r.r2 + r.r_prime + r.r_star, i_y1v_u),
        upper("app11", "r2 + r_prime + r_star <= I(Y2;U)", r.r2 + r.r_prime + r.r_star, i_y2_u),
        lower("app14", "r_prime + r_star >= I(Y2;U) - H(Y1|Y2,U)", r.r_prime + r.r_star,
              i_y2_u - h_y1_y2u),
        lower("app14.x1", "r_star >= I(V;U|Y1)", r.r_star, i_v_u_y1),
    };
    rep.corner_message_rate_capacity = i_y1_u;
    rep.corner_message_rate_secrecy = i_y1v_u - i_y2_u + h_y1_y2u;
    rep.feasible = true;
    for (const auto& e : rep.entries) rep.feasible = rep.feasible && e.satisfied;
    return rep;
}

std::vector<std::string> RateRegionReport::violations() const {
    std::vector<std::string> v;
    for (const auto& e : entries)
        if (!e.satisfied)
            v.push_back(e.label + ": " + e.formula + " violated (lhs " + std::to_string(e.lhs) +
                        ", rhs " + std::to_string(e.rhs) + ")");
    return v;
}

TrialTranscript simulate_wiretap_trial(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                       const SimConfig& cfg, int trial) {
    const detail::WtContext cx(ch, aux, cfg);
    auto et = detail::encode_trial(cx, ch, aux, cfg, static_cast<std::uint64_t>(trial));
    TrialTranscript tr;
    tr.y1 = std::move(et.y1s);
    tr.y2 = std::move(et.y2s);
    tr.w1 = std::move(et.w1);
    tr.w2 = std::move(et.w2);
    tr.w_prime = std::move(et.wp);
    tr.keys.assign(et.keys.begin() + 1, et.keys.begin() + (cfg.n_blocks - 1));
    tr.covering_failures = et.cover_fail;
    return tr;
}

SimReport run_wiretap_feedback_sim(const WiretapChannel& ch, const AuxiliarySystem& aux,
                                   const SimConfig& cfg) {
    const RateRegionReport region = rate_region_check(ch, aux, cfg.rates);
    if (!region.feasible)
        throw rate_error("wiretap sim: rate configuration outside the scheme's region",
                         region.violations());
    check_key_rate(ch, aux, cfg.rates.r2);

    const detail::WtContext cx(ch, aux, cfg);
    const int n = cx.n, N = cx.N;

    const TypicalityWindow w_uy1(cx.p_uy1, N, cfg.epsilon);
    const TypicalityWindow w_y1v(cx.p_y1v, N, cfg.epsilon);
    const TypicalityWindow w_uy1v(cx.p_uy1v, N, cfg.epsilon);

    struct TrialOut {
        bool message_error;
        int cover_fail;
        std::vector<std::uint64_t> keys;
    };
    std::vector<TrialOut> outs(static_cast<std::size_t>(cfg.trials));

    for_each_index(static_cast<std::size_t>(cfg.trials), cfg.exec, [&](std::size_t trial_i) {
        const auto trial = static_cast<std::uint64_t>(trial_i);
        const auto et = detail::encode_trial(cx, ch, aux, cfg, trial);
        TrialOut out{false, et.cover_fail, {}};
        out.keys.assign(et.keys.begin() + 1, et.keys.begin() + (n - 1));

        bool failed = false;
        std::uint64_t ws_next = 0;

        // last block: only the help index is unknown
        {
            const auto& yb = et.y1s[static_cast<std::size_t>(n - 1)];
            std::uint64_t hit = 0;
            int hits = 0;
            std::vector<int> counts(w_uy1.cells());
            for (std::uint64_t c = 0; c < cx.ms && hits < 2; ++c) {
                const std::uint64_t l = cx.u_index(0, 0, 0, c);
                std::fill(counts.begin(), counts.end(), 0);
                bool pruned = false;
                for (int t = 0; t < N; ++t) {
                    const int u = codeword_symbol(cfg.seed, stream_u_codebook,
                                                  static_cast<std::uint64_t>(n - 1), l, t, cx.pu);
                    const int cell = u * cx.ny1 + yb[static_cast<std::size_t>(t)];
                    if (++counts[static_cast<std::size_t>(cell)] > w_uy1.ceiling(cell)) {
                        pruned = true;
                        break;
                    }
                }
                if (!pruned && w_uy1.check(counts)) {
                    ++hits;
                    hit = c;
                }
            }
            if (hits != 1)
                failed = true;
            else
                ws_next = hit;
        }

        std::vector<int> v_hat(static_cast<std::size_t>(N));
        for (int i = n - 2; i >= 0 && !failed; --i) {
            const auto& yb = et.y1s[static_cast<std::size_t>(i)];

            // help codeword of block i inside bin ws_next
            {
                std::uint64_t hit = 0;
                int hits = 0;
                std::vector<int> counts(w_y1v.cells());
                for (std::uint64_t c = 0; c < cx.md && hits < 2; ++c) {
                    const std::uint64_t l = ws_next * cx.md + c;
                    std::fill(counts.begin(), counts.end(), 0);
                    bool pruned = false;
                    for (int t = 0; t < N; ++t) {
                        const int v = codeword_symbol(cfg.seed, stream_v_codebook,
                                                      static_cast<std::uint64_t>(i), l, t, cx.pv);
                        const int cell = yb[static_cast<std::size_t>(t)] * cx.nv + v;
                        if (++counts[static_cast<std::size_t>(cell)] > w_y1v.ceiling(cell)) {
                            pruned = true;
                            break;
                        }
                    }
                    if (!pruned && w_y1v.check(counts)) {
                        ++hits;
                        hit = l;
                    }
                }
                if (hits != 1) {
                    failed = true;
                    break;
                }
                fill_codeword(v_hat, cfg.seed, stream_v_codebook, static_cast<std::uint64_t>(i), hit,
                              cx.pv);
            }

            // u codeword of block i helped by v_hat
            {
                const bool first_block = (i == 0);
                const std::uint64_t count = first_block ? cx.m1 * cx.mp : cx.m_u;
                std::uint64_t hit = 0;
                int hits = 0;
                std::vector<int> counts(w_uy1v.cells());
                for (std::uint64_t c = 0; c < count && hits < 2; ++c) {
                    const std::uint64_t l =
                        first_block ? cx.u_index(c / cx.mp, 0, c % cx.mp, 0) : c;
                    std::fill(counts.begin(), counts.end(), 0);
                    bool pruned = false;
                    for (int t = 0; t < N; ++t) {
                        const int u = codeword_symbol(cfg.seed, stream_u_codebook,
                                                      static_cast<std::uint64_t>(i), l, t, cx.pu);
                        const int cell = (u * cx.ny1 + yb[static_cast<std::size_t>(t)]) * cx.nv +
                                         v_hat[static_cast<std::size_t>(t)];
                        if (++counts[static_cast<std::size_t>(cell)] > w_uy1v.ceiling(cell)) {
                            pruned = true;
                            break;
                        }
                    }
                    if (!pruned && w_uy1v.check(counts)) {
                        ++hits;
                        hit = l;
                    }
                }
                if (hits != 1) {
                    failed = true;
                    break;
                }
                const std::uint64_t ws_prev = hit % cx.ms;
                const std::uint64_t rest = hit / cx.ms;
                const std::uint64_t w2x_hat = (rest / cx.mp) % cx.m2;
                const std::uint64_t w1_hat = rest / (cx.mp * cx.m2);
                if (w1_hat != et.w1[static_cast<std::size_t>(i)]) failed = true;
                if (i >= 1) {
                    // the receiver knows its own feedback, so it re-derives the key
                    const std::uint64_t k = generate_key_coloring(
                        et.y1s[static_cast<std::size_t>(i - 1)], static_cast<std::uint64_t>(i),
                        cx.m2, cfg.seed);
                    const std::uint64_t w2_hat = (w2x_hat + cx.m2 - k) % cx.m2;
                    if (w2_hat != et.w2[static_cast<std::size_t>(i)]) failed = true;
                }
                ws_next = ws_prev;
            }
        }

        out.message_error = failed;
        outs[trial_i] = std::move(out);
    });

    SimReport rep;
    rep.trials = cfg.trials;
    rep.m1 = cx.m1;
    rep.m2 = cx.m2;
    rep.m_prime = cx.mp;
    rep.m_star = cx.ms;
    rep.m_tilde_per_bin = cx.md;
    rep.covering_attempts = cfg.trials * (n - 1);
    rep.key_histogram.assign(cx.m2, 0);
    for (const auto& o : outs) {
        if (o.message_error) ++rep.message_errors;
        rep.covering_failures += o.cover_fail;
        for (auto k : o.keys) ++rep.key_histogram[static_cast<std::size_t>(k)];
        rep.key_total += o.keys.size();
    }
    rep.decode_error_rate = cfg.trials > 0 ? static_cast<double>(rep.message_errors) / cfg.trials : 0.0;
    rep.encoder_failure_rate =
        rep.covering_attempts > 0 ? static_cast<double>(rep.covering_failures) / rep.covering_attempts
                                  : 0.0;

    // asymptotic equivocation expression evaluated at the realized rates
    {
        const JointPmf j = aux.joint(ch);
        static constexpr int U[] = {0};
        static constexpr int Y1[] = {3};
        static constexpr int Y2[] = {4};
        static constexpr int Y2U[] = {4, 0};
        const double i_y2_u = mutual_information(j, Y2, U);
        const double h_y1_y2u = conditional_entropy(j, Y1, Y2U);
        const double r1r = std::log2(static_cast<double>(cx.m1)) / N;
        const double r2r = std::log2(static_cast<double>(cx.m2)) / N;
        const double rpr = std::log2(static_cast<double>(cx.mp)) / N;
        const double rsr = std::log2(static_cast<double>(cx.ms)) / N;
        const double nn = static_cast<double>(n);
        rep.plug_in_equivocation_rate = (nn - 1) / nn * (r1r + rpr + rsr) + (nn - 2) / nn * r2r -
                                        i_y2_u + (nn - 2) / nn * h_y1_y2u;
        rep.message_rate = ((nn - 1) * std::log2(static_cast<double>(cx.m1)) +
                            (nn - 2) * std::log2(static_cast<double>(cx.m2))) /
                           (nn * N);
    }
    return rep;
}

} // namespace wtfb::sim
