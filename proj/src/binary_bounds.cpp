#include "wtfb/binary_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wtfb/info.hpp"

namespace wtfb {

namespace {

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw validation_error(std::string("binary aux params: ") + name + " outside [0,1]");
}

// one term c * log2(num/den); the convention 0*log(0/.) = 0 applies to c = 0
inline double a_term(double c, double num, double den) {
    if (c <= 0.0) return 0.0;
    return c * std::log2(num / den);
}

double golden_section_max(double lo, double hi, const std::function<double(double)>& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 120 && (b - a) > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

BinaryAuxParams::BinaryAuxParams(double a, std::array<double, 4> g) : alpha(a), gamma(g) {
    check_unit(alpha, "alpha");
    check_unit(gamma[0], "gamma1");
    check_unit(gamma[1], "gamma2");
    check_unit(gamma[2], "gamma3");
    check_unit(gamma[3], "gamma4");
}

double cb_s(const BinaryWiretapParams& p) {
    return positive_part(binary_entropy(p.p2) - binary_entropy(p.p1));
}

double cb_in(const BinaryWiretapParams& p) {
    const double h1 = binary_entropy(p.p1);
    return std::min(positive_part(binary_entropy(p.p2) - h1) + h1, 1.0 - h1);
}

double cb_in_objective(const BinaryWiretapParams& p, double alpha) {
    const double h1 = binary_entropy(p.p1);
    const double arm1 = positive_part(binary_entropy(star(alpha, p.p1)) - h1 -
                                      binary_entropy(star(alpha, p.p2)) + binary_entropy(p.p2)) +
                        h1;
    const double arm2 = binary_entropy(star(alpha, p.p1)) - h1;
    return std::min(arm1, arm2);
}

double cb_in_alpha_max(const BinaryWiretapParams& p) {
    double best = 0.0;
    for (int k = 0; k <= 2048; ++k)
        best = std::max(best, cb_in_objective(p, k / 2048.0));
    const double a = golden_section_max(0.0, 1.0, [&](double x) { return cb_in_objective(p, x); });
    return std::max(best, cb_in_objective(p, a));
}

double expression_A(double p1, const BinaryAuxParams& prm) {
    const double a = prm.alpha;
    const double g1 = prm.gamma[0], g2 = prm.gamma[1], g3 = prm.gamma[2], g4 = prm.gamma[3];
    const double q1 = 1.0 - p1;

    double s = 0.0;
    s += a_term(g1 * a * q1, g1 * q1, g1 * a * q1 + g3 * p1 * (1 - a));
    s += a_term((1 - g1) * a * q1, (1 - g1) * q1, (1 - g1) * a * q1 + (1 - g3) * p1 * (1 - a));
    s += a_term(g2 * p1 * a, g2 * p1, g2 * p1 * a + g4 * q1 * (1 - a));
    s += a_term((1 - g2) * p1 * a, (1 - g2) * p1, (1 - g2) * p1 * a + (1 - g4) * q1 * (1 - a));
    s += a_term(g3 * p1 * (1 - a), g3 * p1, g3 * p1 * (1 - a) + g1 * q1 * a);
    s += a_term((1 - g3) * p1 * (1 - a), (1 - g3) * p1, (1 - g3) * p1 * (1 - a) + (1 - g1) * q1 * a);
    s += a_term(g4 * q1 * (1 - a), g4 * q1, g4 * q1 * (1 - a) + g2 * p1 * a);
    s += a_term((1 - g4) * q1 * (1 - a), (1 - g4) * q1, (1 - g4) * q1 * (1 - a) + (1 - g2) * p1 * a);
    return s;
}

double expression_B(const BinaryWiretapParams& p, double alpha) {
    check_unit(alpha, "alpha");
    const double p1 = p.p1, p2 = p.p2, a = alpha;
    const double pq = p1 * p2;
    const double py2_0 = a * (1 - p2) + (1 - a) * p2; // = a * p2 (star)
    const double py2_1 = a * p2 + (1 - a) * (1 - p2);

    double s = 0.0;
    s += a_term(a * (1 - p1) * (1 - p2) + (1 - a) * pq, py2_0,
                a * (1 - p1) * (1 - p2) + (1 - a) * pq);
    s += a_term(a * (1 - p1) * p2 + (1 - a) * p1 * (1 - p2), py2_1,
                a * (1 - p1) * p2 + (1 - a) * p1 * (1 - p2));
    s += a_term(a * p1 * (1 - p2) + (1 - a) * (1 - p1) * p2, py2_0,
                a * p1 * (1 - p2) + (1 - a) * (1 - p1) * p2);
    s += a_term(a * pq + (1 - a) * (1 - p1) * (1 - p2), py2_1,
                a * pq + (1 - a) * (1 - p1) * (1 - p2));
    return s;
}

double cb_in_new_objective(const BinaryWiretapParams& p, const BinaryAuxParams& prm) {
    const double h1 = binary_entropy(p.p1);
    const double A = expression_A(p.p1, prm);
    const double arm1 =
        positive_part(A - binary_entropy(star(prm.alpha, p.p2)) + binary_entropy(p.p2)) + h1;
    const double arm2 = binary_entropy(star(prm.alpha, p.p1)) - h1;
    return std::min(arm1, arm2);
}

BinaryBoundResult cb_in_new(const BinaryWiretapParams& p, const BinaryOptSettings& s) {
    SimplexSpace space;
    space.block_sizes = {2, 2, 2, 2, 2}; // gauge == (alpha, gamma1..gamma4)

    // corner seeds: alpha grid x deterministic informants
    std::vector<std::vector<double>> seeds;
    for (int ai = 0; ai <= 10; ++ai) {
        const double a = ai / 10.0;
        for (int mask = 0; mask < 16; ++mask)
            seeds.push_back({a, static_cast<double>(mask & 1), static_cast<double>((mask >> 1) & 1),
                             static_cast<double>((mask >> 2) & 1), static_cast<double>((mask >> 3) & 1)});
        seeds.push_back({a, 0.5, 0.5, 0.5, 0.5});
    }

    AscentSettings as;
    as.grid_resolution = s.grid_resolution;
    as.max_grid_points = 80000; // 9^5 product grid fits
    as.restarts = s.restarts;
    as.min_step = 1e-9;
    as.seed = s.seed;
    as.exec = s.exec;

    ProbObjective obj = [&](std::span<const double> probs) {
        // blocks of size 2 store (p, 1-p); entries 0,2,4,6,8 are the params
        const BinaryAuxParams prm(probs[0], {probs[2], probs[4], probs[6], probs[8]});
        return cb_in_new_objective(p, prm);
    };
    MaximizeResult m = maximize_over_simplexes(space, obj, as, seeds);
    BinaryAuxParams arg(m.probs[0], {m.probs[2], m.probs[4], m.probs[6], m.probs[8]});
    return BinaryBoundResult{m.value, arg, std::move(m.trace)};
}

BinaryBoundResult cb_out(const BinaryWiretapParams& p, const BinaryOptSettings&) {
    const double h1 = binary_entropy(p.p1);
    auto f = [&](double a) {
        return std::min(expression_B(p, a), binary_entropy(star(a, p.p1)) - h1);
    };
    double best_a = 0.5, best = f(0.5);
    const int n = 2048;
    for (int k = 0; k <= n; ++k) {
        const double a = static_cast<double>(k) / n;
        const double v = f(a);
        if (v > best) {
            best = v;
            best_a = a;
        }
    }
    const double lo = std::max(0.0, best_a - 1.0 / n);
    const double hi = std::min(1.0, best_a + 1.0 / n);
    const double a_ref = golden_section_max(lo, hi, f);
    if (f(a_ref) > best) {
        best = f(a_ref);
        best_a = a_ref;
    }
    OptimizerTrace trace;
    trace.candidates = n + 1;
    trace.restarts = 1;
    trace.evaluations = n + 1 + 120;
    trace.best_per_restart = {best};
    return BinaryBoundResult{best, BinaryAuxParams(best_a, {0, 0, 0, 0}), std::move(trace)};
}

std::vector<SweepRow> sweep(double p1, const std::vector<double>& p2_grid,
                            const BinaryOptSettings& s) {
    for (double p2 : p2_grid)
        static_cast<void>(BinaryWiretapParams(p1, p2)); // validates the domain up front

    std::vector<SweepRow> rows(p2_grid.size(),
                               SweepRow{0, 0, 0, 0, 0, 0, {0, 0, 0, 0}});
    for_each_index(p2_grid.size(), s.exec, [&](std::size_t i) {
        const BinaryWiretapParams p(p1, p2_grid[i]);
        BinaryOptSettings rs = s;
        rs.exec = ExecMode::serial; // rows are the parallel unit
        const auto inew = cb_in_new(p, rs);
        const auto out = cb_out(p, rs);
        rows[i] = SweepRow{p.p2,       cb_s(p),         cb_in(p), inew.value,
                           out.value,  inew.argmax.alpha, inew.argmax.gamma};
    });
    return rows;
}

} // namespace wtfb
