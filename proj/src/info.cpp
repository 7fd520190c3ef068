#include "wtfb/info.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace wtfb {

namespace {

double entropy_of_table(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

void check_disjoint(std::span<const int> a, std::span<const int> b, const char* what) {
    for (int i : a)
        for (int j : b)
            if (i == j)
                throw validation_error(std::string(what) + ": axis groups overlap on axis " +
                                       std::to_string(i));
}

void check_axes(const JointPmf& j, std::span<const int> axes, const char* what) {
    if (axes.empty()) throw validation_error(std::string(what) + ": empty axis group");
    for (int a : axes)
        if (a < 0 || a >= j.rank())
            throw validation_error(std::string(what) + ": axis " + std::to_string(a) +
                                   " out of range");
}

std::vector<int> concat(std::span<const int> a, std::span<const int> b) {
    std::vector<int> r(a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

double clamp_tiny_negative(double v) {
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

} // namespace

double entropy(const Pmf& p) { return entropy_of_table(p.probs()); }

double entropy(const JointPmf& j) { return entropy_of_table(j.probs()); }

double entropy_of(const JointPmf& j, std::span<const int> axes) {
    check_axes(j, axes, "entropy_of");
    return entropy_of_table(j.marginal(axes).probs());
}

double binary_entropy(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw validation_error("binary_entropy: argument " + std::to_string(u) +
                               " outside [0,1]");
    if (u == 0.0 || u == 1.0) return 0.0;
    return -u * std::log2(u) - (1.0 - u) * std::log2(1.0 - u);
}

double star(double u, double v) {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw validation_error("star: arguments outside [0,1]");
    return u * (1.0 - v) + (1.0 - u) * v;
}

double mutual_information(const JointPmf& j, std::span<const int> group_a,
                          std::span<const int> group_b) {
    check_axes(j, group_a, "mutual_information");
    check_axes(j, group_b, "mutual_information");
    check_disjoint(group_a, group_b, "mutual_information");
    const double ha = entropy_of(j, group_a);
    const double hb = entropy_of(j, group_b);
    const std::vector<int> ab = concat(group_a, group_b);
    const double hab = entropy_of(j, ab);
    return clamp_tiny_negative(ha + hb - hab);
}

double conditional_entropy(const JointPmf& j, std::span<const int> target,
                           std::span<const int> given) {
    check_axes(j, target, "conditional_entropy");
    check_disjoint(target, given, "conditional_entropy");
    if (given.empty()) return entropy_of(j, target);
    for (int a : given)
        if (a < 0 || a >= j.rank())
            throw validation_error("conditional_entropy: axis out of range");
    const std::vector<int> tg = concat(target, given);
    return clamp_tiny_negative(entropy_of(j, tg) - entropy_of(j, given));
}

double conditional_mutual_information(const JointPmf& j, std::span<const int> group_a,
                                      std::span<const int> group_b,
                                      std::span<const int> given) {
    check_axes(j, group_a, "conditional_mutual_information");
    check_axes(j, group_b, "conditional_mutual_information");
    check_disjoint(group_a, group_b, "conditional_mutual_information");
    check_disjoint(group_a, given, "conditional_mutual_information");
    check_disjoint(group_b, given, "conditional_mutual_information");
    if (given.empty()) return mutual_information(j, group_a, group_b);
    const std::vector<int> ac = concat(group_a, given);
    const std::vector<int> bc = concat(group_b, given);
    const std::vector<int> abc = concat(std::span<const int>(ac), group_b);
    return clamp_tiny_negative(entropy_of(j, ac) + entropy_of(j, bc) - entropy_of(j, given) -
                               entropy_of(j, abc));
}

JointPmf assemble_joint(const Pmf& pu, const ConditionalPmf& px_given_u,
                        const ConditionalPmf& channel, const ConditionalPmf& pv_given_uy1) {
    const int nu = pu.size();
    if (px_given_u.input_sizes() != std::vector<int>{nu})
        throw validation_error("assemble_joint: P(x|u) input does not match |U|");
    const int nx = px_given_u.output_size();
    if (channel.input_sizes() != std::vector<int>{nx})
        throw validation_error("assemble_joint: channel input does not match |X|");
    if (pv_given_uy1.input_sizes().size() != 2 || pv_given_uy1.input_sizes()[0] != nu)
        throw validation_error("assemble_joint: P(v|u,y1) must condition on (u, y1)");
    const int ny1 = pv_given_uy1.input_sizes()[1];
    if (channel.output_size() % ny1 != 0)
        throw validation_error("assemble_joint: channel output size not divisible by |Y1|");
    const int ny2 = channel.output_size() / ny1;
    const int nv = pv_given_uy1.output_size();

    std::vector<double> t(static_cast<std::size_t>(nu) * nv * nx * ny1 * ny2);
    std::size_t f = 0;
    for (int u = 0; u < nu; ++u)
        for (int v = 0; v < nv; ++v)
            for (int x = 0; x < nx; ++x) {
                const double pux = pu[u] * px_given_u.slice(static_cast<std::size_t>(u))[x];
                const auto ch = channel.slice(static_cast<std::size_t>(x));
                for (int y1 = 0; y1 < ny1; ++y1) {
                    const double pv =
                        pv_given_uy1.slice(static_cast<std::size_t>(u) * ny1 + y1)[v];
                    for (int y2 = 0; y2 < ny2; ++y2, ++f)
                        t[f] = pux * ch[static_cast<std::size_t>(y1) * ny2 + y2] * pv;
                }
            }
    return joint_from_factors_unchecked({nu, nv, nx, ny1, ny2}, std::move(t));
}

JointPmf assemble_joint_uxy(const Pmf& pu, const ConditionalPmf& px_given_u,
                            const ConditionalPmf& channel, int y1_size) {
    const int nu = pu.size();
    if (px_given_u.input_sizes() != std::vector<int>{nu})
        throw validation_error("assemble_joint_uxy: P(x|u) input does not match |U|");
    const int nx = px_given_u.output_size();
    if (channel.input_sizes() != std::vector<int>{nx})
        throw validation_error("assemble_joint_uxy: channel input does not match |X|");
    if (y1_size <= 0 || channel.output_size() % y1_size != 0)
        throw validation_error("assemble_joint_uxy: bad |Y1|");
    const int ny1 = y1_size;
    const int ny2 = channel.output_size() / ny1;

    std::vector<double> t(static_cast<std::size_t>(nu) * nx * ny1 * ny2);
    std::size_t f = 0;
    for (int u = 0; u < nu; ++u)
        for (int x = 0; x < nx; ++x) {
            const double pux = pu[u] * px_given_u.slice(static_cast<std::size_t>(u))[x];
            const auto ch = channel.slice(static_cast<std::size_t>(x));
            for (int yy = 0; yy < ny1 * ny2; ++yy, ++f) t[f] = pux * ch[static_cast<std::size_t>(yy)];
        }
    return joint_from_factors_unchecked({nu, nx, ny1, ny2}, std::move(t));
}

JointPmf assemble_joint_xyv(const Pmf& px, const ConditionalPmf& py_given_x,
                            const ConditionalPmf& pv_given_xy) {
    const int nx = px.size();
    if (py_given_x.input_sizes() != std::vector<int>{nx})
        throw validation_error("assemble_joint_xyv: P(y|x) input does not match |X|");
    const int ny = py_given_x.output_size();
    if (pv_given_xy.input_sizes() != std::vector<int>{nx, ny})
        throw validation_error("assemble_joint_xyv: P(v|x,y) must condition on (x, y)");
    const int nv = pv_given_xy.output_size();

    std::vector<double> t(static_cast<std::size_t>(nx) * ny * nv);
    std::size_t f = 0;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
            const double pxy = px[x] * py_given_x.slice(static_cast<std::size_t>(x))[y];
            const auto pv = pv_given_xy.slice(static_cast<std::size_t>(x) * ny + y);
            for (int v = 0; v < nv; ++v, ++f) t[f] = pxy * pv[v];
        }
    return joint_from_factors_unchecked({nx, ny, nv}, std::move(t));
}

} // namespace wtfb
