#pragma once

// Internal state shared by the wiretap simulator and the exact-posterior
// equivocation computation. Not installed; both sides must agree on stream
// layout and tie handling, so the encoder lives here exactly once.

#include <cmath>

#include "wtfb/sim/codebook.hpp"
#include "wtfb/sim/typicality.hpp"
#include "wtfb/sim/wiretap_sim.hpp"

namespace wtfb::sim::detail {

struct WtContext {
    int nu, nv, nx, ny1, ny2, n, N;
    std::uint64_t m1, m2, mp, ms, md; // message, key, confusion, help, per-bin resolution
    std::uint64_t m_u;                // u-codebook size = m1*m2*mp*ms
    std::uint64_t m_v;                // v-codebook size = ms*md
    std::vector<double> p_uy1;        // cells u*ny1 + y1
    std::vector<double> p_y1v;        // cells y1*nv + v
    std::vector<double> p_uy1v;       // cells (u*ny1 + y1)*nv + v
    std::vector<double> pu, pv;       // codeword marginals

    WtContext(const WiretapChannel& ch, const AuxiliarySystem& aux, const SimConfig& cfg);

    std::uint64_t u_index(std::uint64_t w1, std::uint64_t w2x, std::uint64_t wp,
                          std::uint64_t ws) const {
        return ((w1 * m2 + w2x) * mp + wp) * ms + ws;
    }
};

struct EncodedTrial {
    std::vector<std::vector<int>> us, xs, y1s, y2s;
    std::vector<std::uint64_t> u_index;
    std::vector<std::uint64_t> w1, w2, wp;
    std::vector<std::uint64_t> keys;    // key used in block i (0 where undefined)
    std::vector<std::uint64_t> true_ws; // help index selected on block i
    int cover_fail = 0;
};

EncodedTrial encode_trial(const WtContext& cx, const WiretapChannel& ch,
                          const AuxiliarySystem& aux, const SimConfig& cfg, std::uint64_t trial);

} // namespace wtfb::sim::detail
