#include "wtfb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wtfb/info.hpp"
#include "wtfb/rng.hpp"

namespace wtfb {

namespace {

std::vector<double> random_distribution(SplitMix& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - rng.next_unit() + 1e-300); // exponential, Dirichlet(1,..,1)
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

JointPmf joint_xy1y2(const Pmf& px, const WiretapChannel& ch) {
    std::vector<double> t(static_cast<std::size_t>(ch.x_size()) * ch.y1_size() * ch.y2_size());
    std::size_t f = 0;
    for (int x = 0; x < ch.x_size(); ++x)
        for (int y1 = 0; y1 < ch.y1_size(); ++y1)
            for (int y2 = 0; y2 < ch.y2_size(); ++y2, ++f) t[f] = px[x] * ch.prob(x, y1, y2);
    return JointPmf({ch.x_size(), ch.y1_size(), ch.y2_size()}, std::move(t));
}

} // namespace

WiretapChannel random_small_channel(std::uint64_t seed, int nx, int ny1, int ny2) {
    SplitMix rng(hash_u64(seed, 0xc4a2u));
    std::vector<double> law;
    law.reserve(static_cast<std::size_t>(nx) * ny1 * ny2);
    for (int x = 0; x < nx; ++x) {
        auto slice = random_distribution(rng, ny1 * ny2);
        law.insert(law.end(), slice.begin(), slice.end());
    }
    return make_channel(nx, ny1, ny2, std::move(law), ChannelStructure::general);
}

WiretapChannel random_degraded_channel(std::uint64_t seed, int nx, int ny1, int ny2) {
    SplitMix rng(hash_u64(seed, 0xde62u));
    std::vector<double> main_t, deg_t;
    for (int x = 0; x < nx; ++x) {
        auto row = random_distribution(rng, ny1);
        main_t.insert(main_t.end(), row.begin(), row.end());
    }
    for (int y1 = 0; y1 < ny1; ++y1) {
        auto row = random_distribution(rng, ny2);
        deg_t.insert(deg_t.end(), row.begin(), row.end());
    }
    return make_degraded_channel(ConditionalPmf({nx}, ny1, std::move(main_t)),
                                 ConditionalPmf({ny1}, ny2, std::move(deg_t)));
}

Pmf random_pmf(std::uint64_t seed, int n) {
    SplitMix rng(hash_u64(seed, 0x9f3u));
    return Pmf(random_distribution(rng, n));
}

ConditionalPmf random_conditional(std::uint64_t seed, std::vector<int> input_sizes, int output_size) {
    SplitMix rng(hash_u64(seed, 0xc0d3u));
    std::size_t rows = 1;
    for (int s : input_sizes) rows *= static_cast<std::size_t>(s);
    std::vector<double> t;
    t.reserve(rows * static_cast<std::size_t>(output_size));
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = random_distribution(rng, output_size);
        t.insert(t.end(), row.begin(), row.end());
    }
    return ConditionalPmf(std::move(input_sizes), output_size, std::move(t));
}

CheckResult check_degraded_identity(int draws, std::uint64_t seed) {
    CheckResult res{"degraded-identity", true, 0.0, 1e-9,
                    "I(Y1;X) - I(Y2;X) + H(Y1|Y2,X) = H(Y1|Y2) on degraded channels"};
    static constexpr int X[] = {0};
    static constexpr int Y1[] = {1};
    static constexpr int Y2[] = {2};
    static constexpr int Y2X[] = {2, 0};
    for (int d = 0; d < draws; ++d) {
        const int ny1 = 2 + static_cast<int>(hash_u64(seed, 77, d) % 2);
        const auto ch = random_degraded_channel(hash_u64(seed, 1, d), 2, ny1, 2);
        const auto px = random_pmf(hash_u64(seed, 2, d), ch.x_size());
        const auto j = joint_xy1y2(px, ch);
        const double lhs = mutual_information(j, Y1, X) - mutual_information(j, Y2, X) +
                           conditional_entropy(j, Y1, Y2X);
        const double rhs = conditional_entropy(j, Y1, Y2);
        res.worst = std::max(res.worst, std::abs(lhs - rhs));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

CheckResult check_dmc_rate_identity(int draws, std::uint64_t seed) {
    CheckResult res{"feedback-rate-identity", true, 0.0, 1e-9,
                    "I(Y,V;X) - I(V;X|Y) = I(X;Y) for every helper"};
    for (int d = 0; d < draws; ++d) {
        const int nx = 2 + static_cast<int>(hash_u64(seed, 3, d) % 2);
        const int ny = 2 + static_cast<int>(hash_u64(seed, 4, d) % 2);
        const int nv = 1 + static_cast<int>(hash_u64(seed, 5, d) % 3);
        const auto px = random_pmf(hash_u64(seed, 6, d), nx);
        const auto ch = random_conditional(hash_u64(seed, 7, d), {nx}, ny);
        const auto aux = random_conditional(hash_u64(seed, 8, d), {nx, ny}, nv);
        const auto id = dmc_feedback_rate_identity(px, ch, aux);
        res.worst = std::max(res.worst, std::abs(id.via_help_information - id.direct));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

CheckResult check_expression_a_oracle(int draws, std::uint64_t seed, const AFunc& a) {
    CheckResult res{"expression_A", true, 0.0, 1e-9,
                    "eight-term expansion equals I(X;Y1,V) of the assembled joint"};
    static constexpr int X[] = {0};
    static constexpr int Y1V[] = {1, 2};
    for (int d = 0; d < draws; ++d) {
        SplitMix rng(hash_u64(seed, 9, d));
        const double p1 = 0.001 + 0.498 * rng.next_unit();
        const double alpha = rng.next_unit();
        const BinaryAuxParams prm(alpha, {rng.next_unit(), rng.next_unit(), rng.next_unit(),
                                          rng.next_unit()});
        // joint over (x, y1, v)
        std::vector<double> t(8);
        for (int x = 0; x < 2; ++x)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int v = 0; v < 2; ++v) {
                    const double px = x == 0 ? alpha : 1 - alpha;
                    const double py = (y1 == x) ? 1 - p1 : p1;
                    const double g = prm.gamma[static_cast<std::size_t>(2 * x + y1)];
                    const double pv = v == 0 ? g : 1 - g;
                    t[static_cast<std::size_t>(x * 4 + y1 * 2 + v)] = px * py * pv;
                }
        const JointPmf j({2, 2, 2}, std::move(t));
        const double oracle = mutual_information(j, X, Y1V);
        res.worst = std::max(res.worst, std::abs(oracle - a(p1, prm)));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

CheckResult check_expression_b_oracle(int draws, std::uint64_t seed, const BFunc& b) {
    CheckResult res{"expression_B", true, 0.0, 1e-9,
                    "pair-law expansion equals H(Y1|Y2) of the assembled joint"};
    static constexpr int Y1[] = {0};
    static constexpr int Y2[] = {1};
    for (int d = 0; d < draws; ++d) {
        SplitMix rng(hash_u64(seed, 10, d));
        const BinaryWiretapParams p(0.001 + 0.498 * rng.next_unit(),
                                    0.001 + 0.498 * rng.next_unit());
        const double alpha = rng.next_unit();
        std::vector<double> t(4);
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2) {
                double s = 0.0;
                for (int x = 0; x < 2; ++x) {
                    const double px = x == 0 ? alpha : 1 - alpha;
                    const double a1 = (y1 == x) ? 1 - p.p1 : p.p1;
                    const double a2 = (y2 == x) ? 1 - p.p2 : p.p2;
                    s += px * a1 * a2;
                }
                t[static_cast<std::size_t>(y1 * 2 + y2)] = s;
            }
        const JointPmf j({2, 2}, std::move(t));
        const double oracle = conditional_entropy(j, Y1, Y2);
        res.worst = std::max(res.worst, std::abs(oracle - b(p, alpha)));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

std::vector<CheckResult> check_identities(std::uint64_t seed) {
    return {check_degraded_identity(100, seed), check_dmc_rate_identity(100, seed),
            check_expression_a_oracle(1000, seed), check_expression_b_oracle(1000, seed)};
}

std::vector<CheckResult> check_ordering(std::uint64_t seed, const OrderingSettings& s) {
    std::vector<CheckResult> out;
    CheckResult c1{"ordering cs<=rs", true, 1e300, s.slack, ""};
    CheckResult c2{"ordering rs<=rstar", true, 1e300, s.slack, ""};
    CheckResult c3{"ordering rstar<=cfout", true, 1e300, s.slack, ""};
    std::ostringstream viol3;
    int checked = 0;

    auto run_one = [&](const WiretapChannel& ch, const std::string& label) {
        BoundSettings bs = s.bounds;
        const GeneralBounds g = compute_general_bounds(ch, bs);
        ++checked;
        const double m1 = g.rs.value - g.cs.value;
        const double m2 = g.rstar.value - g.rs.value;
        const double m3 = g.cfout.value - g.rstar.value;
        c1.worst = std::min(c1.worst, m1);
        c2.worst = std::min(c2.worst, m2);
        c3.worst = std::min(c3.worst, m3);
        if (m1 < -s.slack) c1.pass = false;
        if (m2 < -s.slack) c2.pass = false;
        if (m3 < -s.slack) {
            c3.pass = false;
            viol3 << " " << label << " (rstar " << g.rstar.value << " > cfout " << g.cfout.value
                  << ")";
        }
    };

    for (int k = 0; k < s.random_channels; ++k)
        run_one(random_small_channel(hash_u64(seed, 20, k)), "random#" + std::to_string(k));
    for (double p1 : s.binary_p1)
        for (double p2 : s.binary_p2)
            run_one(make_binary_channel(BinaryWiretapParams(p1, p2)),
                    "binary(" + std::to_string(p1) + "," + std::to_string(p2) + ")");

    c1.detail = "min margin over " + std::to_string(checked) + " channels";
    c2.detail = c1.detail;
    c3.detail = c3.pass ? c1.detail : ("violations:" + viol3.str());
    out.push_back(c1);
    out.push_back(c2);
    out.push_back(c3);
    return out;
}

CheckResult check_constant_v_reduction(std::uint64_t seed, int channels,
                                       const BoundSettings& settings) {
    CheckResult res{"constant-v-reduction", true, 0.0, 1e-6,
                    "rstar with |V| = 1 coincides with rs"};
    for (int k = 0; k < channels; ++k) {
        const auto ch = random_small_channel(hash_u64(seed, 30, k));
        BoundSettings bs = settings;
        bs.v_size = 1;
        const auto rstar = r_star_s(ch, bs);
        const auto rs = r_s_ahlswede_cai(ch, bs);
        res.worst = std::max(res.worst, std::abs(rstar.value - rs.value));
    }
    res.pass = res.worst < res.tolerance;
    return res;
}

std::vector<CheckResult> check_reduction(std::uint64_t seed) {
    return {check_constant_v_reduction(seed, 20)};
}

} // namespace wtfb
