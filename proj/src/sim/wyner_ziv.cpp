#include "wtfb/sim/wyner_ziv.hpp"

#include <cmath>

#include "wtfb/info.hpp"
#include "wtfb/sim/codebook.hpp"
#include "wtfb/sim/typicality.hpp"

namespace wtfb::sim {

namespace {

struct WzContext {
    int nx, ny, nu;
    std::vector<double> pu;        // quantizer output marginal
    std::vector<double> p_xu;      // joint P(x,u) cells, x-major
    std::vector<double> p_yu;      // joint P(y,u) cells, y-major
    std::uint64_t bins, per_bin;

    explicit WzContext(const WzConfig& cfg) {
        if (cfg.source_law.rank() != 2)
            throw validation_error("wyner-ziv: source law must have axes (x, y)");
        nx = cfg.source_law.axis_size(0);
        ny = cfg.source_law.axis_size(1);
        if (cfg.quantizer.input_sizes() != std::vector<int>{nx})
            throw validation_error("wyner-ziv: quantizer must condition on x");
        nu = cfg.quantizer.output_size();

        const Pmf px = cfg.source_law.marginal_pmf(0);
        pu.assign(static_cast<std::size_t>(nu), 0.0);
        for (int x = 0; x < nx; ++x)
            for (int u = 0; u < nu; ++u)
                pu[static_cast<std::size_t>(u)] +=
                    px[x] * cfg.quantizer.slice(static_cast<std::size_t>(x))[u];

        p_xu.assign(static_cast<std::size_t>(nx) * nu, 0.0);
        p_yu.assign(static_cast<std::size_t>(ny) * nu, 0.0);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) {
                const int sidx[] = {x, y};
                const double pxy = cfg.source_law.at(sidx);
                for (int u = 0; u < nu; ++u) {
                    const double q = cfg.quantizer.slice(static_cast<std::size_t>(x))[u];
                    p_xu[static_cast<std::size_t>(x) * nu + u] += pxy * q;
                    p_yu[static_cast<std::size_t>(y) * nu + u] += pxy * q;
                }
            }

        bins = codebook_size(cfg.rate_bins, cfg.block_len);
        per_bin = codebook_size(cfg.rate_per_bin, cfg.block_len);
        check_codebook_bits(std::log2(static_cast<double>(bins)) +
                                std::log2(static_cast<double>(per_bin)),
                            "wyner-ziv");
    }
};

// scan candidates [first, first+count) of the u-codebook for typicality of
// (ref_seq, u-codeword) against `window` over cells ref*nu + u
template <class OnHit>
void scan_codebook(const WzConfig& cfg, const WzContext& ctx, std::span<const int> ref_seq,
                   const TypicalityWindow& window, std::uint64_t first, std::uint64_t count,
                   int nu, OnHit&& on_hit) {
    std::vector<int> counts(window.cells());
    for (std::uint64_t c = 0; c < count; ++c) {
        const std::uint64_t l = first + c;
        std::fill(counts.begin(), counts.end(), 0);
        bool pruned = false;
        for (int t = 0; t < cfg.block_len; ++t) {
            const int u = codeword_symbol(cfg.seed, stream_u_codebook, 0, l, t, ctx.pu);
            const int cell = ref_seq[static_cast<std::size_t>(t)] * nu + u;
            if (++counts[static_cast<std::size_t>(cell)] > window.ceiling(cell)) {
                pruned = true;
                break;
            }
        }
        if (!pruned && window.check(counts)) {
            if (!on_hit(l)) return;
        }
    }
}

} // namespace

WzTrialOutcome wz_encode_decode_trial(const WzConfig& cfg, int trial) {
    const WzContext ctx(cfg);
    const int n = cfg.block_len;

    // draw the source pair
    std::vector<int> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const double u01 = to_unit(hash_u64(cfg.seed, stream_source, static_cast<std::uint64_t>(trial),
                                            static_cast<std::uint64_t>(t)));
        const int flat = sample_symbol(cfg.source_law.probs(), u01);
        xs[static_cast<std::size_t>(t)] = flat / ctx.ny;
        ys[static_cast<std::size_t>(t)] = flat % ctx.ny;
    }

    // encoder: covering search over the whole codebook, reservoir pick on ties
    const TypicalityWindow wx(ctx.p_xu, n, cfg.epsilon);
    std::uint64_t chosen = 0;
    std::uint64_t hits = 0;
    scan_codebook(cfg, ctx, xs, wx, 0, ctx.bins * ctx.per_bin, ctx.nu, [&](std::uint64_t l) {
        ++hits;
        const double u01 =
            to_unit(hash_u64(cfg.seed, stream_tie_break, static_cast<std::uint64_t>(trial), l));
        if (u01 * static_cast<double>(hits) < 1.0) chosen = l;
        return true;
    });

    WzTrialOutcome out{hits > 0, false, false};
    if (!out.encoder_covered) return out;

    const std::uint64_t bin = chosen / ctx.per_bin;

    // decoder: unique jointly typical candidate within the bin
    const TypicalityWindow wy(ctx.p_yu, n, cfg.epsilon);
    std::uint64_t decoded = 0;
    int found = 0;
    scan_codebook(cfg, ctx, ys, wy, bin * ctx.per_bin, ctx.per_bin, ctx.nu, [&](std::uint64_t l) {
        decoded = l;
        return ++found < 2; // a second hit already decides ambiguity
    });
    out.decoder_unique = found == 1;
    if (!out.decoder_unique) return out;

    // success criterion: reconstruction jointly typical with the source
    std::vector<int> counts(static_cast<std::size_t>(ctx.nx) * ctx.nu, 0);
    for (int t = 0; t < n; ++t) {
        const int u = codeword_symbol(cfg.seed, stream_u_codebook, 0, decoded, t, ctx.pu);
        ++counts[static_cast<std::size_t>(xs[static_cast<std::size_t>(t)]) * ctx.nu + u];
    }
    out.reconstruction_typical = wx.check(counts);
    return out;
}

WzReport run_wyner_ziv_sim(const WzConfig& cfg) {
    const WzContext ctx(cfg); // validates up front
    WzReport rep;
    rep.trials = cfg.trials;
    rep.bins = ctx.bins;
    rep.per_bin = ctx.per_bin;
    rep.realized_rate_bins = std::log2(static_cast<double>(ctx.bins)) / cfg.block_len;
    rep.realized_rate_per_bin = std::log2(static_cast<double>(ctx.per_bin)) / cfg.block_len;

    std::vector<WzTrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    for_each_index(static_cast<std::size_t>(cfg.trials), cfg.exec,
                   [&](std::size_t i) { outcomes[i] = wz_encode_decode_trial(cfg, static_cast<int>(i)); });

    for (const auto& o : outcomes) {
        if (!o.encoder_covered) ++rep.encoder_failures;
        else if (!o.decoder_unique) ++rep.decoder_failures;
        if (o.reconstruction_typical) ++rep.successes;
    }
    rep.success_rate = cfg.trials > 0 ? static_cast<double>(rep.successes) / cfg.trials : 0.0;
    return rep;
}

} // namespace wtfb::sim
