#include "wtfb/sim/dmc_sim.hpp"

#include <cmath>

#include "wtfb/info.hpp"
#include "wtfb/sim/codebook.hpp"
#include "wtfb/sim/typicality.hpp"

namespace wtfb::sim {

namespace {

struct DmcContext {
    int nx, ny, nv, n, N;
    std::uint64_t m_msg, m_help, m_res, m_x, m_v;
    std::vector<double> pxy, pyv, pxyv; // cell probabilities
    std::vector<double> pv;             // v-codeword marginal

    explicit DmcContext(const DmcConfig& cfg) {
        nx = cfg.px.size();
        if (cfg.channel.input_sizes() != std::vector<int>{nx})
            throw validation_error("dmc sim: channel must condition on x");
        ny = cfg.channel.output_size();
        if (cfg.helper.input_sizes() != std::vector<int>{nx, ny})
            throw validation_error("dmc sim: helper must condition on (x, y)");
        nv = cfg.helper.output_size();
        n = cfg.n_blocks;
        N = cfg.block_len;
        if (n < 3) throw validation_error("dmc sim: need at least 3 blocks");
        if (N < 1) throw validation_error("dmc sim: block length must be >= 1");
        if (!(cfg.epsilon > 0.0)) throw validation_error("dmc sim: epsilon must be positive");

        m_msg = codebook_size(cfg.rate_message, N);
        m_help = codebook_size(cfg.rate_help, N);
        m_res = codebook_size(cfg.rate_resolution, N);
        m_x = m_msg * m_help;
        m_v = m_help * m_res;
        check_codebook_bits(std::log2(static_cast<double>(m_x)), "dmc x");
        check_codebook_bits(std::log2(static_cast<double>(m_v)), "dmc v");

        const JointPmf j = assemble_joint_xyv(cfg.px, cfg.channel, cfg.helper);
        pxy.assign(static_cast<std::size_t>(nx) * ny, 0.0);
        pyv.assign(static_cast<std::size_t>(ny) * nv, 0.0);
        pxyv.assign(j.probs().begin(), j.probs().end()); // axes (x,y,v), row-major
        pv.assign(static_cast<std::size_t>(nv), 0.0);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int v = 0; v < nv; ++v) {
                    const double p = pxyv[(static_cast<std::size_t>(x) * ny + y) * nv + v];
                    pxy[static_cast<std::size_t>(x) * ny + y] += p;
                    pyv[static_cast<std::size_t>(y) * nv + v] += p;
                    pv[static_cast<std::size_t>(v)] += p;
                }
    }
};

struct UniqueScan {
    std::uint64_t hit_index = 0;
    int hits = 0;
};

} // namespace

std::vector<RateMargin> dmc_rate_margins(const DmcConfig& cfg) {
    const JointPmf j = assemble_joint_xyv(cfg.px, cfg.channel, cfg.helper);
    static constexpr int X[] = {0}, Y[] = {1}, V[] = {2}, XY[] = {0, 1}, YV[] = {1, 2};
    const double i_y_x = mutual_information(j, Y, X);
    const double i_y_v = mutual_information(j, Y, V);
    const double i_yv_x = mutual_information(j, YV, X);
    const double i_v_xy = mutual_information(j, V, XY);

    auto upper = [](std::string label, std::string formula, double lhs, double rhs) {
        return RateMargin{std::move(label), std::move(formula), lhs, rhs, lhs <= rhs + 1e-9,
                          rhs - lhs};
    };
    auto lower = [](std::string label, std::string formula, double lhs, double rhs) {
        return RateMargin{std::move(label), std::move(formula), lhs, rhs, lhs >= rhs - 1e-9,
                          lhs - rhs};
    };
    return {
        upper("app-xxs1", "R* <= I(Y;X)", cfg.rate_help, i_y_x),
        upper("app-xxs2", "R** <= I(Y;V)", cfg.rate_resolution, i_y_v),
        upper("app-xxs3", "R + R* <= I(Y,V;X)", cfg.rate_message + cfg.rate_help, i_yv_x),
        lower("kong1-dsx", "R* + R** >= I(V;X,Y)", cfg.rate_help + cfg.rate_resolution, i_v_xy),
    };
}

DmcReport run_dmc_feedback_sim(const DmcConfig& cfg) {
    const DmcContext cx(cfg);
    const int n = cx.n, N = cx.N;

    struct TrialOut {
        bool message_error;
        int cover_fail;
    };
    std::vector<TrialOut> outs(static_cast<std::size_t>(cfg.trials));

    const TypicalityWindow w_xy(cx.pxy, N, cfg.epsilon);
    const TypicalityWindow w_yv(cx.pyv, N, cfg.epsilon);
    const TypicalityWindow w_xyv(cx.pxyv, N, cfg.epsilon);

    for_each_index(static_cast<std::size_t>(cfg.trials), cfg.exec, [&](std::size_t trial_i) {
        const auto trial = static_cast<std::uint64_t>(trial_i);
        TrialOut out{false, 0};

        // draw messages for blocks 0..n-2
        std::vector<std::uint64_t> w(static_cast<std::size_t>(n), 0);
        for (int i = 0; i + 1 < n; ++i)
            w[static_cast<std::size_t>(i)] =
                hash_u64(cfg.seed, stream_message, trial, static_cast<std::uint64_t>(i)) % cx.m_msg;

        std::vector<std::vector<int>> xs(static_cast<std::size_t>(n), std::vector<int>(N));
        std::vector<std::vector<int>> ys(static_cast<std::size_t>(n), std::vector<int>(N));
        std::vector<std::uint64_t> x_index(static_cast<std::size_t>(n), 0);
        std::vector<std::uint64_t> true_ws(static_cast<std::size_t>(n), 0); // ws[i] = help of block i

        auto transmit = [&](int block) {
            auto& xb = xs[static_cast<std::size_t>(block)];
            auto& yb = ys[static_cast<std::size_t>(block)];
            fill_codeword(xb, cfg.seed, stream_x_codebook, static_cast<std::uint64_t>(block),
                          x_index[static_cast<std::size_t>(block)], cfg.px.probs());
            for (int t = 0; t < N; ++t) {
                const double u01 = to_unit(hash_u64(cfg.seed, stream_channel, trial,
                                                    static_cast<std::uint64_t>(block * N + t)));
                yb[static_cast<std::size_t>(t)] = sample_symbol(
                    cfg.channel.slice(static_cast<std::size_t>(xb[static_cast<std::size_t>(t)])), u01);
            }
        };

        x_index[0] = w[0] * cx.m_help + 0;
        transmit(0);
        for (int i = 1; i < n; ++i) {
            // cover the previous block's (x, y) with a help codeword
            const auto& xb = xs[static_cast<std::size_t>(i - 1)];
            const auto& yb = ys[static_cast<std::size_t>(i - 1)];
            std::uint64_t chosen = 0;
            std::uint64_t hits = 0;
            std::vector<int> counts(w_xyv.cells());
            for (std::uint64_t c = 0; c < cx.m_v; ++c) {
                std::fill(counts.begin(), counts.end(), 0);
                bool pruned = false;
                for (int t = 0; t < N; ++t) {
                    const int v = codeword_symbol(cfg.seed, stream_v_codebook,
                                                  static_cast<std::uint64_t>(i - 1), c, t, cx.pv);
                    const int cell = (xb[static_cast<std::size_t>(t)] * cx.ny +
                                      yb[static_cast<std::size_t>(t)]) * cx.nv + v;
                    if (++counts[static_cast<std::size_t>(cell)] > w_xyv.ceiling(cell)) {
                        pruned = true;
                        break;
                    }
                }
                if (!pruned && w_xyv.check(counts)) {
                    ++hits;
                    const double u01 = to_unit(hash_u64(cfg.seed, stream_tie_break, trial,
                                                        static_cast<std::uint64_t>(i - 1), c));
                    if (u01 * static_cast<double>(hits) < 1.0) chosen = c;
                }
            }
            if (hits == 0) {
                ++out.cover_fail;
                chosen = hash_u64(cfg.seed, stream_tie_break, trial,
                                  static_cast<std::uint64_t>(i - 1), 0xfa11u) % cx.m_v;
            }
            true_ws[static_cast<std::size_t>(i - 1)] = chosen / cx.m_res;

            if (i + 1 < n)
                x_index[static_cast<std::size_t>(i)] =
                    w[static_cast<std::size_t>(i)] * cx.m_help + true_ws[static_cast<std::size_t>(i - 1)];
            else
                x_index[static_cast<std::size_t>(i)] = 0 * cx.m_help + true_ws[static_cast<std::size_t>(i - 1)];
            transmit(i);
        }

        // backward decoding
        bool failed = false;
        std::uint64_t ws_next = 0; // decoded help index of the block below

        // last block: only the help index is unknown
        {
            const auto& yb = ys[static_cast<std::size_t>(n - 1)];
            UniqueScan scan;
            std::vector<int> counts(w_xy.cells());
            for (std::uint64_t c = 0; c < cx.m_help && scan.hits < 2; ++c) {
                const std::uint64_t l = 0 * cx.m_help + c;
                std::fill(counts.begin(), counts.end(), 0);
                bool pruned = false;
                for (int t = 0; t < N; ++t) {
                    const int x = codeword_symbol(cfg.seed, stream_x_codebook,
                                                  static_cast<std::uint64_t>(n - 1), l, t,
                                                  cfg.px.probs());
                    const int cell = x * cx.ny + yb[static_cast<std::size_t>(t)];
                    if (++counts[static_cast<std::size_t>(cell)] > w_xy.ceiling(cell)) {
                        pruned = true;
                        break;
                    }
                }
                if (!pruned && w_xy.check(counts)) {
                    ++scan.hits;
                    scan.hit_index = c;
                }
            }
            if (scan.hits != 1)
                failed = true;
            else
                ws_next = scan.hit_index;
        }

        std::vector<int> v_hat(static_cast<std::size_t>(N));
        for (int i = n - 2; i >= 0 && !failed; --i) {
            const auto& yb = ys[static_cast<std::size_t>(i)];

            // help codeword of block i inside bin ws_next
            {
                UniqueScan scan;
                std::vector<int> counts(w_yv.cells());
                for (std::uint64_t c = 0; c < cx.m_res && scan.hits < 2; ++c) {
                    const std::uint64_t l = ws_next * cx.m_res + c;
                    std::fill(counts.begin(), counts.end(), 0);
                    bool pruned = false;
                    for (int t = 0; t < N; ++t) {
                        const int v = codeword_symbol(cfg.seed, stream_v_codebook,
                                                      static_cast<std::uint64_t>(i), l, t, cx.pv);
                        const int cell = yb[static_cast<std::size_t>(t)] * cx.nv + v;
                        if (++counts[static_cast<std::size_t>(cell)] > w_yv.ceiling(cell)) {
                            pruned = true;
                            break;
                        }
                    }
                    if (!pruned && w_yv.check(counts)) {
                        ++scan.hits;
                        scan.hit_index = l;
                    }
                }
                if (scan.hits != 1) {
                    failed = true;
                    break;
                }
                fill_codeword(v_hat, cfg.seed, stream_v_codebook, static_cast<std::uint64_t>(i),
                              scan.hit_index, cx.pv);
            }

            // x codeword of block i helped by v_hat
            {
                const std::uint64_t first = (i == 0) ? 0 : 0;
                const std::uint64_t count = (i == 0) ? cx.m_msg : cx.m_x;
                UniqueScan scan;
                std::vector<int> counts(w_xyv.cells());
                for (std::uint64_t c = 0; c < count && scan.hits < 2; ++c) {
                    const std::uint64_t l = (i == 0) ? c * cx.m_help + 0 : first + c;
                    std::fill(counts.begin(), counts.end(), 0);
                    bool pruned = false;
                    for (int t = 0; t < N; ++t) {
                        const int x = codeword_symbol(cfg.seed, stream_x_codebook,
                                                      static_cast<std::uint64_t>(i), l, t,
                                                      cfg.px.probs());
                        const int cell = (x * cx.ny + yb[static_cast<std::size_t>(t)]) * cx.nv +
                                         v_hat[static_cast<std::size_t>(t)];
                        if (++counts[static_cast<std::size_t>(cell)] > w_xyv.ceiling(cell)) {
                            pruned = true;
                            break;
                        }
                    }
                    if (!pruned && w_xyv.check(counts)) {
                        ++scan.hits;
                        scan.hit_index = l;
                    }
                }
                if (scan.hits != 1) {
                    failed = true;
                    break;
                }
                const std::uint64_t w_hat = scan.hit_index / cx.m_help;
                ws_next = scan.hit_index % cx.m_help;
                if (w_hat != w[static_cast<std::size_t>(i)]) failed = true;
            }
        }

        out.message_error = failed;
        outs[trial_i] = out;
    });

    DmcReport rep;
    rep.trials = cfg.trials;
    rep.m_message = cx.m_msg;
    rep.m_help = cx.m_help;
    rep.m_resolution = cx.m_res;
    rep.covering_attempts = cfg.trials * (n - 1);
    for (const auto& o : outs) {
        if (o.message_error) ++rep.message_errors;
        rep.covering_failures += o.cover_fail;
    }
    rep.message_error_rate =
        cfg.trials > 0 ? static_cast<double>(rep.message_errors) / cfg.trials : 0.0;
    rep.encoder_failure_rate = rep.covering_attempts > 0
                                   ? static_cast<double>(rep.covering_failures) / rep.covering_attempts
                                   : 0.0;
    rep.margins = dmc_rate_margins(cfg);
    return rep;
}

} // namespace wtfb::sim
