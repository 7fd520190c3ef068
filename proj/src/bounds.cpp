#include "wtfb/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace wtfb {

namespace {

constexpr int kAlphabetCap = 4;

void check_alphabet_cap(const WiretapChannel& ch) {
    if (ch.x_size() > kAlphabetCap || ch.y1_size() > kAlphabetCap || ch.y2_size() > kAlphabetCap)
        throw validation_error(
            "bound optimization supports |X|,|Y1|,|Y2| <= 4; got " + std::to_string(ch.x_size()) +
            "," + std::to_string(ch.y1_size()) + "," + std::to_string(ch.y2_size()));
}

void check_non_degraded(const WiretapChannel& ch, const char* op) {
    if (ch.structure() != ChannelStructure::non_degraded)
        throw validation_error(std::string(op) +
                               ": channel must be tagged non_degraded (Y1 and Y2 conditionally "
                               "independent given X)");
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Quantities of the five-axis joint (u, v, x, y1, y2) used by the bound
// formulas. Marginalizing lazily per term keeps each evaluation cheap.
struct Axes {
    static constexpr int u = 0, v = 1, x = 2, y1 = 3, y2 = 4;
};

double eval_bound(BoundKind kind, const JointPmf& j) {
    static constexpr int U[] = {Axes::u};
    static constexpr int X[] = {Axes::x};
    static constexpr int Y1[] = {Axes::y1};
    static constexpr int Y2[] = {Axes::y2};
    static constexpr int Y1V[] = {Axes::y1, Axes::v};
    static constexpr int Y2U[] = {Axes::y2, Axes::u};

    switch (kind) {
        case BoundKind::cs_general:
            return positive_part(mutual_information(j, Y1, U) - mutual_information(j, Y2, U));
        case BoundKind::r_s_ahlswede_cai: {
            const double i1 = mutual_information(j, Y1, U);
            const double i2 = mutual_information(j, Y2, U);
            const double h = conditional_entropy(j, Y1, Y2U);
            return std::min(positive_part(i1 - i2) + h, i1);
        }
        case BoundKind::r_star_s: {
            const double i1v = mutual_information(j, Y1V, U);
            const double i1 = mutual_information(j, Y1, U);
            const double i2 = mutual_information(j, Y2, U);
            const double h = conditional_entropy(j, Y1, Y2U);
            return std::min(positive_part(i1v - i2) + h, i1);
        }
        case BoundKind::c_f_out: {
            const double h = conditional_entropy(j, Y1, Y2);
            return std::min(h, mutual_information(j, Y1, U));
        }
        case BoundKind::r_double_star: {
            const double i1v = mutual_information(j, X, Y1V);
            const double i2 = mutual_information(j, X, Y2);
            const double h = conditional_entropy(j, Y1, X);
            return std::min(positive_part(i1v - i2) + h, mutual_information(j, X, Y1));
        }
        case BoundKind::c_f_star_out: {
            const double h = conditional_entropy(j, Y1, Y2);
            return std::min(h, mutual_information(j, X, Y1));
        }
        case BoundKind::r_non: {
            const double i1 = mutual_information(j, X, Y1);
            const double i2 = mutual_information(j, X, Y2);
            const double h = conditional_entropy(j, Y1, X);
            return std::min(positive_part(i1 - i2) + h, i1);
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Parameter-space layouts. Each layout decodes the optimizer's concatenated
// block distributions into an AuxiliarySystem.

enum class Layout {
    full_aux,   // [pu][px|u rows][pv|u,y1 rows]
    no_v,       // [pu][px|u rows], V constant
    joint_ux,   // [q(u,x) single block], V constant
    x_only,     // [px], U = X, V constant
    x_and_v     // [px][pv|x,y1 rows], U = X
};

struct BoundSpace {
    Layout layout;
    int nu, nv, nx, ny1;
    SimplexSpace space;

    static BoundSpace make(Layout layout, const WiretapChannel& ch, int u_size, int v_size) {
        BoundSpace bs;
        bs.layout = layout;
        bs.nx = ch.x_size();
        bs.ny1 = ch.y1_size();
        bs.nu = (layout == Layout::x_only || layout == Layout::x_and_v) ? ch.x_size()
                : (u_size > 0 ? u_size : ch.x_size() + 1);
        bs.nv = (layout == Layout::full_aux || layout == Layout::x_and_v)
                    ? (v_size > 0 ? v_size : ch.x_size() + 2)
                    : 1;
        if (bs.nu > ch.x_size() + 1)
            throw validation_error("auxiliary cardinality |U| exceeds |X|+1");
        if (bs.nv > ch.x_size() + 2)
            throw validation_error("auxiliary cardinality |V| exceeds |X|+2");

        switch (layout) {
            case Layout::full_aux:
                bs.space.block_sizes.push_back(bs.nu);
                for (int u = 0; u < bs.nu; ++u) bs.space.block_sizes.push_back(bs.nx);
                for (int k = 0; k < bs.nu * bs.ny1; ++k) bs.space.block_sizes.push_back(bs.nv);
                break;
            case Layout::no_v:
                bs.space.block_sizes.push_back(bs.nu);
                for (int u = 0; u < bs.nu; ++u) bs.space.block_sizes.push_back(bs.nx);
                break;
            case Layout::joint_ux:
                bs.space.block_sizes.push_back(bs.nu * bs.nx);
                break;
            case Layout::x_only:
                bs.space.block_sizes.push_back(bs.nx);
                break;
            case Layout::x_and_v:
                bs.space.block_sizes.push_back(bs.nx);
                for (int k = 0; k < bs.nx * bs.ny1; ++k) bs.space.block_sizes.push_back(bs.nv);
                break;
        }
        return bs;
    }

    AuxiliarySystem build(std::span<const double> probs, const WiretapChannel& ch) const {
        const int nx = ch.x_size();
        const int ny1 = ch.y1_size();
        switch (layout) {
            case Layout::full_aux: {
                std::vector<double> pu(probs.begin(), probs.begin() + nu);
                std::vector<double> pxu(probs.begin() + nu, probs.begin() + nu + nu * nx);
                std::vector<double> pv(probs.begin() + nu + nu * nx, probs.end());
                return AuxiliarySystem(nx, ny1, Pmf(std::move(pu)),
                                       ConditionalPmf({nu}, nx, std::move(pxu)),
                                       ConditionalPmf({nu, ny1}, nv, std::move(pv)));
            }
            case Layout::no_v: {
                std::vector<double> pu(probs.begin(), probs.begin() + nu);
                std::vector<double> pxu(probs.begin() + nu, probs.begin() + nu + nu * nx);
                return AuxiliarySystem(
                    nx, ny1, Pmf(std::move(pu)), ConditionalPmf({nu}, nx, std::move(pxu)),
                    ConditionalPmf({nu, ny1}, 1,
                                   std::vector<double>(static_cast<std::size_t>(nu) * ny1, 1.0)));
            }
            case Layout::joint_ux: {
                std::vector<double> pu(static_cast<std::size_t>(nu), 0.0);
                std::vector<double> pxu(static_cast<std::size_t>(nu) * nx, 0.0);
                for (int u = 0; u < nu; ++u) {
                    double m = 0.0;
                    for (int x = 0; x < nx; ++x) m += probs[static_cast<std::size_t>(u) * nx + x];
                    pu[static_cast<std::size_t>(u)] = m;
                    for (int x = 0; x < nx; ++x)
                        pxu[static_cast<std::size_t>(u) * nx + x] =
                            m > 0.0 ? probs[static_cast<std::size_t>(u) * nx + x] / m : 1.0 / nx;
                }
                return AuxiliarySystem(
                    nx, ny1, Pmf(std::move(pu)), ConditionalPmf({nu}, nx, std::move(pxu)),
                    ConditionalPmf({nu, ny1}, 1,
                                   std::vector<double>(static_cast<std::size_t>(nu) * ny1, 1.0)));
            }
            case Layout::x_only: {
                std::vector<double> px(probs.begin(), probs.begin() + nx);
                std::vector<int> ident(static_cast<std::size_t>(nx));
                for (int x = 0; x < nx; ++x) ident[static_cast<std::size_t>(x)] = x;
                return AuxiliarySystem(
                    nx, ny1, Pmf(std::move(px)), ConditionalPmf::deterministic({nx}, nx, ident),
                    ConditionalPmf({nx, ny1}, 1,
                                   std::vector<double>(static_cast<std::size_t>(nx) * ny1, 1.0)));
            }
            case Layout::x_and_v: {
                std::vector<double> px(probs.begin(), probs.begin() + nx);
                std::vector<double> pv(probs.begin() + nx, probs.end());
                std::vector<int> ident(static_cast<std::size_t>(nx));
                for (int x = 0; x < nx; ++x) ident[static_cast<std::size_t>(x)] = x;
                return AuxiliarySystem(nx, ny1, Pmf(std::move(px)),
                                       ConditionalPmf::deterministic({nx}, nx, ident),
                                       ConditionalPmf({nx, ny1}, nv, std::move(pv)));
            }
        }
        throw validation_error("unreachable layout");
    }

};

// ---------------------------------------------------------------------------
// Structured seeds (gauge-encoded). Probability-space seeds are built first
// and then encoded, which keeps this readable.

std::vector<double> uniform_block(int m) { return std::vector<double>(m, 1.0 / m); }

void append_seed(std::vector<std::vector<double>>& seeds, const BoundSpace& bs,
                 const std::vector<double>& probs) {
    seeds.push_back(bs.space.encode(probs));
}

// P(x) candidates: uniform, near-vertices and (for binary) an alpha grid.
std::vector<std::vector<double>> input_pmf_seeds(int nx) {
    std::vector<std::vector<double>> out;
    out.push_back(uniform_block(nx));
    if (nx == 2) {
        for (double a : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95})
            out.push_back({a, 1.0 - a});
    } else {
        for (int x = 0; x < nx; ++x) {
            std::vector<double> v(static_cast<std::size_t>(nx), 0.02 / (nx - 1));
            v[static_cast<std::size_t>(x)] = 0.98;
            out.push_back(std::move(v));
        }
    }
    return out;
}

// All deterministic maps (inputs -> v) when the count is manageable.
std::vector<std::vector<int>> deterministic_maps(int n_inputs, int nv, std::size_t cap = 4096) {
    std::vector<std::vector<int>> maps;
    double total = 1.0;
    for (int k = 0; k < n_inputs; ++k) total *= nv;
    if (total > static_cast<double>(cap)) return maps;
    std::vector<int> m(static_cast<std::size_t>(n_inputs), 0);
    for (std::size_t t = 0; t < static_cast<std::size_t>(total); ++t) {
        maps.push_back(m);
        for (int k = n_inputs - 1; k >= 0; --k) {
            if (++m[static_cast<std::size_t>(k)] < nv) break;
            m[static_cast<std::size_t>(k)] = 0;
        }
    }
    return maps;
}

std::vector<double> flatten_det_v(const std::vector<int>& map, int nv) {
    std::vector<double> t(map.size() * static_cast<std::size_t>(nv), 0.0);
    for (std::size_t k = 0; k < map.size(); ++k)
        t[k * static_cast<std::size_t>(nv) + static_cast<std::size_t>(map[k])] = 1.0;
    return t;
}

std::vector<std::vector<double>> structured_seeds(const BoundSpace& bs, const WiretapChannel& ch,
                                                  const std::vector<std::vector<double>>& warm_probs) {
    const int nx = ch.x_size();
    const int ny1 = ch.y1_size();
    std::vector<std::vector<double>> seeds;

    auto identity_pxu = [&](int nu) {
        std::vector<double> pxu;
        for (int u = 0; u < nu; ++u) {
            std::vector<double> row(static_cast<std::size_t>(nx), 0.0);
            row[static_cast<std::size_t>(u % nx)] = 1.0;
            pxu.insert(pxu.end(), row.begin(), row.end());
        }
        return pxu;
    };
    auto embed_pu = [&](const std::vector<double>& px, int nu) {
        std::vector<double> pu(static_cast<std::size_t>(nu), 0.0);
        for (int x = 0; x < nx; ++x) pu[static_cast<std::size_t>(x)] = px[static_cast<std::size_t>(x)];
        return pu;
    };

    switch (bs.layout) {
        case Layout::no_v:
        case Layout::full_aux: {
            const int n_vrows = bs.nu * ny1;
            std::vector<std::vector<double>> vparts;
            if (bs.layout == Layout::full_aux) {
                for (const auto& map : deterministic_maps(n_vrows, bs.nv))
                    vparts.push_back(flatten_det_v(map, bs.nv));
                if (vparts.empty()) {
                    // fall back to a handful of canonical maps
                    std::vector<int> constant(static_cast<std::size_t>(n_vrows), 0);
                    vparts.push_back(flatten_det_v(constant, bs.nv));
                    std::vector<int> copy_y1(static_cast<std::size_t>(n_vrows));
                    std::vector<int> copy_u(static_cast<std::size_t>(n_vrows));
                    for (int u = 0; u < bs.nu; ++u)
                        for (int y1 = 0; y1 < ny1; ++y1) {
                            copy_y1[static_cast<std::size_t>(u) * ny1 + y1] = y1 % bs.nv;
                            copy_u[static_cast<std::size_t>(u) * ny1 + y1] = u % bs.nv;
                        }
                    vparts.push_back(flatten_det_v(copy_y1, bs.nv));
                    vparts.push_back(flatten_det_v(copy_u, bs.nv));
                }
                std::vector<double> uniform_v;
                for (int k = 0; k < n_vrows; ++k) {
                    auto ub = uniform_block(bs.nv);
                    uniform_v.insert(uniform_v.end(), ub.begin(), ub.end());
                }
                vparts.push_back(std::move(uniform_v));
            } else {
                vparts.push_back({}); // no V blocks
            }

            for (const auto& px : input_pmf_seeds(nx)) {
                const auto pu = embed_pu(px, bs.nu);
                const auto pxu = identity_pxu(bs.nu);
                for (const auto& vp : vparts) {
                    std::vector<double> probs;
                    probs.insert(probs.end(), pu.begin(), pu.end());
                    probs.insert(probs.end(), pxu.begin(), pxu.end());
                    probs.insert(probs.end(), vp.begin(), vp.end());
                    append_seed(seeds, bs, probs);
                }
            }
            // fully uniform system
            {
                std::vector<double> probs = uniform_block(bs.nu);
                for (int u = 0; u < bs.nu; ++u) {
                    auto ub = uniform_block(nx);
                    probs.insert(probs.end(), ub.begin(), ub.end());
                }
                if (bs.layout == Layout::full_aux)
                    for (int k = 0; k < n_vrows; ++k) {
                        auto ub = uniform_block(bs.nv);
                        probs.insert(probs.end(), ub.begin(), ub.end());
                    }
                append_seed(seeds, bs, probs);
            }
            break;
        }
        case Layout::joint_ux: {
            for (const auto& px : input_pmf_seeds(nx)) {
                std::vector<double> q(static_cast<std::size_t>(bs.nu) * nx, 0.0);
                for (int x = 0; x < nx; ++x)
                    q[static_cast<std::size_t>(x) * nx + x] = px[static_cast<std::size_t>(x)];
                append_seed(seeds, bs, q);
            }
            append_seed(seeds, bs, uniform_block(bs.nu * nx));
            break;
        }
        case Layout::x_only: {
            for (const auto& px : input_pmf_seeds(nx)) append_seed(seeds, bs, px);
            break;
        }
        case Layout::x_and_v: {
            const int n_vrows = nx * ny1;
            std::vector<std::vector<double>> vparts;
            for (const auto& map : deterministic_maps(n_vrows, bs.nv))
                vparts.push_back(flatten_det_v(map, bs.nv));
            {
                std::vector<double> uniform_v;
                for (int k = 0; k < n_vrows; ++k) {
                    auto ub = uniform_block(bs.nv);
                    uniform_v.insert(uniform_v.end(), ub.begin(), ub.end());
                }
                vparts.push_back(std::move(uniform_v));
            }
            for (const auto& px : input_pmf_seeds(nx))
                for (const auto& vp : vparts) {
                    std::vector<double> probs(px);
                    probs.insert(probs.end(), vp.begin(), vp.end());
                    append_seed(seeds, bs, probs);
                }
            break;
        }
    }
    for (const auto& wp : warm_probs) append_seed(seeds, bs, wp);
    return seeds;
}

BoundResult run_bound(BoundKind kind, Layout layout, const WiretapChannel& ch,
                      const BoundSettings& settings,
                      const std::vector<std::vector<double>>& warm_probs = {}) {
    check_alphabet_cap(ch);
    const BoundSpace bs = BoundSpace::make(layout, ch, settings.u_size, settings.v_size);
    const auto seeds = structured_seeds(bs, ch, warm_probs);

    ProbObjective obj = [&](std::span<const double> probs) {
        const AuxiliarySystem aux = bs.build(probs, ch);
        return eval_bound(kind, aux.joint(ch));
    };
    MaximizeResult m = maximize_over_simplexes(bs.space, obj, settings.ascent, seeds);

    BoundResult res{m.value, kind, bs.build(m.probs, ch), std::move(m.trace)};
    return res;
}

std::vector<double> aux_to_layout_probs(const AuxiliarySystem& aux, Layout layout,
                                        const BoundSpace& bs) {
    std::vector<double> probs;
    switch (layout) {
        case Layout::full_aux: {
            probs.insert(probs.end(), aux.pu.probs().begin(), aux.pu.probs().end());
            probs.insert(probs.end(), aux.px_given_u.table().begin(), aux.px_given_u.table().end());
            if (aux.v_size == bs.nv) {
                probs.insert(probs.end(), aux.pv_given_uy1.table().begin(),
                             aux.pv_given_uy1.table().end());
            } else {
                // embed a smaller V alphabet into the cap-sized one
                for (std::size_t r = 0; r < aux.pv_given_uy1.input_count(); ++r) {
                    auto s = aux.pv_given_uy1.slice(r);
                    for (int v = 0; v < bs.nv; ++v)
                        probs.push_back(v < aux.v_size ? s[static_cast<std::size_t>(v)] : 0.0);
                }
            }
            break;
        }
        case Layout::joint_ux: {
            for (int u = 0; u < aux.u_size; ++u)
                for (std::size_t x = 0; x < static_cast<std::size_t>(bs.nx); ++x)
                    probs.push_back(aux.pu[u] * aux.px_given_u.slice(static_cast<std::size_t>(u))[x]);
            // pad missing U symbols with zero mass
            for (int u = aux.u_size; u < bs.nu; ++u)
                for (int x = 0; x < bs.nx; ++x) probs.push_back(0.0);
            break;
        }
        default:
            throw validation_error("warm start not supported for this layout");
    }
    return probs;
}

} // namespace

AuxiliarySystem::AuxiliarySystem(int x_size, int y1_size, Pmf pu_, ConditionalPmf px_given_u_,
                                 ConditionalPmf pv_given_uy1_)
    : u_size(pu_.size()),
      v_size(pv_given_uy1_.output_size()),
      pu(std::move(pu_)),
      px_given_u(std::move(px_given_u_)),
      pv_given_uy1(std::move(pv_given_uy1_)) {
    if (u_size > x_size + 1)
        throw validation_error("auxiliary system: |U| = " + std::to_string(u_size) +
                               " exceeds cap |X|+1 = " + std::to_string(x_size + 1));
    if (v_size > x_size + 2)
        throw validation_error("auxiliary system: |V| = " + std::to_string(v_size) +
                               " exceeds cap |X|+2 = " + std::to_string(x_size + 2));
    if (px_given_u.input_sizes() != std::vector<int>{u_size} || px_given_u.output_size() != x_size)
        throw validation_error("auxiliary system: P(x|u) dimensions mismatch");
    if (pv_given_uy1.input_sizes() != std::vector<int>{u_size, y1_size})
        throw validation_error("auxiliary system: P(v|u,y1) dimensions mismatch");
}

AuxiliarySystem AuxiliarySystem::identity_on_x(const WiretapChannel& ch) {
    const int nx = ch.x_size();
    std::vector<int> ident(static_cast<std::size_t>(nx));
    for (int x = 0; x < nx; ++x) ident[static_cast<std::size_t>(x)] = x;
    return AuxiliarySystem(
        nx, ch.y1_size(), Pmf::uniform(nx), ConditionalPmf::deterministic({nx}, nx, ident),
        ConditionalPmf({nx, ch.y1_size()}, 1,
                       std::vector<double>(static_cast<std::size_t>(nx) * ch.y1_size(), 1.0)));
}

JointPmf AuxiliarySystem::joint(const WiretapChannel& ch) const {
    return assemble_joint(pu, px_given_u, ch.law(), pv_given_uy1);
}

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::cs_general: return "cs";
        case BoundKind::r_s_ahlswede_cai: return "rs";
        case BoundKind::r_star_s: return "rstar";
        case BoundKind::c_f_out: return "cfout";
        case BoundKind::r_double_star: return "rdstar";
        case BoundKind::c_f_star_out: return "cfstarout";
        case BoundKind::r_non: return "rnon";
    }
    return "?";
}

BoundResult optimize(const std::function<double(const AuxiliarySystem&, const WiretapChannel&)>& objective,
                     const WiretapChannel& ch, const BoundSettings& settings, BoundKind kind) {
    check_alphabet_cap(ch);
    const BoundSpace bs = BoundSpace::make(Layout::full_aux, ch, settings.u_size, settings.v_size);
    const auto seeds = structured_seeds(bs, ch, {});
    ProbObjective obj = [&](std::span<const double> probs) {
        return objective(bs.build(probs, ch), ch);
    };
    MaximizeResult m = maximize_over_simplexes(bs.space, obj, settings.ascent, seeds);
    return BoundResult{m.value, kind, bs.build(m.probs, ch), std::move(m.trace)};
}

BoundResult cs_general(const WiretapChannel& ch, const BoundSettings& settings) {
    return run_bound(BoundKind::cs_general, Layout::no_v, ch, settings);
}

BoundResult r_s_ahlswede_cai(const WiretapChannel& ch, const BoundSettings& settings) {
    return run_bound(BoundKind::r_s_ahlswede_cai, Layout::no_v, ch, settings);
}

BoundResult r_star_s(const WiretapChannel& ch, const BoundSettings& settings) {
    const int nv = settings.v_size > 0 ? settings.v_size : ch.x_size() + 2;
    return run_bound(BoundKind::r_star_s, nv == 1 ? Layout::no_v : Layout::full_aux, ch, settings);
}

BoundResult c_f_out(const WiretapChannel& ch, const BoundSettings& settings) {
    return run_bound(BoundKind::c_f_out, Layout::joint_ux, ch, settings);
}

BoundResult r_double_star_nondegraded(const WiretapChannel& ch, const BoundSettings& settings) {
    check_non_degraded(ch, "r_double_star_nondegraded");
    return run_bound(BoundKind::r_double_star, Layout::x_and_v, ch, settings);
}

BoundResult c_f_star_out_nondegraded(const WiretapChannel& ch, const BoundSettings& settings) {
    check_non_degraded(ch, "c_f_star_out_nondegraded");
    return run_bound(BoundKind::c_f_star_out, Layout::x_only, ch, settings);
}

BoundResult r_non_ahlswede_cai_nondegraded(const WiretapChannel& ch, const BoundSettings& settings) {
    check_non_degraded(ch, "r_non_ahlswede_cai_nondegraded");
    return run_bound(BoundKind::r_non, Layout::x_only, ch, settings);
}

GeneralBounds compute_general_bounds(const WiretapChannel& ch, const BoundSettings& settings) {
    BoundResult cs = cs_general(ch, settings);

    std::vector<std::vector<double>> warm;
    {
        std::vector<double> probs;
        probs.insert(probs.end(), cs.argmax.pu.probs().begin(), cs.argmax.pu.probs().end());
        probs.insert(probs.end(), cs.argmax.px_given_u.table().begin(),
                     cs.argmax.px_given_u.table().end());
        warm.push_back(std::move(probs));
    }
    BoundResult rs = run_bound(BoundKind::r_s_ahlswede_cai, Layout::no_v, ch, settings, warm);

    const int nv = settings.v_size > 0 ? settings.v_size : ch.x_size() + 2;
    BoundResult rstar = [&] {
        if (nv == 1) {
            std::vector<std::vector<double>> warm_rstar = warm;
            std::vector<double> probs;
            probs.insert(probs.end(), rs.argmax.pu.probs().begin(), rs.argmax.pu.probs().end());
            probs.insert(probs.end(), rs.argmax.px_given_u.table().begin(),
                         rs.argmax.px_given_u.table().end());
            warm_rstar.push_back(std::move(probs));
            return run_bound(BoundKind::r_star_s, Layout::no_v, ch, settings, warm_rstar);
        }
        const BoundSpace full = BoundSpace::make(Layout::full_aux, ch, settings.u_size, settings.v_size);
        std::vector<std::vector<double>> warm_rstar;
        // rs argmax with every cheap deterministic V attachment
        const int n_vrows = full.nu * ch.y1_size();
        auto maps = deterministic_maps(n_vrows, full.nv, 256);
        if (maps.empty()) maps.push_back(std::vector<int>(static_cast<std::size_t>(n_vrows), 0));
        for (const auto& map : maps) {
            std::vector<double> probs;
            probs.insert(probs.end(), rs.argmax.pu.probs().begin(), rs.argmax.pu.probs().end());
            probs.insert(probs.end(), rs.argmax.px_given_u.table().begin(),
                         rs.argmax.px_given_u.table().end());
            auto vt = flatten_det_v(map, full.nv);
            probs.insert(probs.end(), vt.begin(), vt.end());
            warm_rstar.push_back(std::move(probs));
        }
        return run_bound(BoundKind::r_star_s, Layout::full_aux, ch, settings, warm_rstar);
    }();

    const BoundSpace ux = BoundSpace::make(Layout::joint_ux, ch, settings.u_size, 1);
    std::vector<std::vector<double>> warm_cfout;
    warm_cfout.push_back(aux_to_layout_probs(rstar.argmax, Layout::joint_ux, ux));
    warm_cfout.push_back(aux_to_layout_probs(rs.argmax, Layout::joint_ux, ux));
    BoundResult cfout = run_bound(BoundKind::c_f_out, Layout::joint_ux, ch, settings, warm_cfout);

    return GeneralBounds{std::move(cs), std::move(rs), std::move(rstar), std::move(cfout)};
}

RateIdentity dmc_feedback_rate_identity(const Pmf& px, const ConditionalPmf& py_given_x,
                                        const ConditionalPmf& pv_given_xy) {
    const JointPmf j = assemble_joint_xyv(px, py_given_x, pv_given_xy);
    static constexpr int X[] = {0};
    static constexpr int Y[] = {1};
    static constexpr int V[] = {2};
    static constexpr int YV[] = {1, 2};
    const double i_yv_x = mutual_information(j, YV, X);
    const double i_v_x_given_y = conditional_mutual_information(j, V, X, Y);
    const double i_x_y = mutual_information(j, X, Y);
    return RateIdentity{i_yv_x - i_v_x_given_y, i_x_y};
}

} // namespace wtfb
