#include "wtfb/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wtfb/lp.hpp"

namespace wtfb {

namespace {

constexpr double kFactorizationTol = 1e-9;
constexpr double kDegradingTol = 1e-6;
constexpr int kFeasibilityAlphabetCap = 4;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

const char* to_string(ChannelStructure s) {
    switch (s) {
        case ChannelStructure::general: return "general";
        case ChannelStructure::physically_degraded: return "physically_degraded";
        case ChannelStructure::non_degraded: return "non_degraded";
    }
    return "general";
}

ChannelStructure structure_from_string(const std::string& s) {
    if (s == "general") return ChannelStructure::general;
    if (s == "physically_degraded") return ChannelStructure::physically_degraded;
    if (s == "non_degraded") return ChannelStructure::non_degraded;
    throw validation_error("unknown channel structure tag \"" + s + "\"");
}

BinaryWiretapParams::BinaryWiretapParams(double p1_, double p2_) : p1(p1_), p2(p2_) {
    if (!(p1 >= 0.0 && p1 < 0.5))
        throw validation_error("binary wiretap params: p1 must lie in [0, 0.5), got " +
                               std::to_string(p1));
    if (!(p2 >= 0.0 && p2 < 0.5))
        throw validation_error("binary wiretap params: p2 must lie in [0, 0.5), got " +
                               std::to_string(p2));
}

WiretapChannel::WiretapChannel(int x_size, int y1_size, int y2_size, ConditionalPmf law,
                               ChannelStructure structure)
    : nx_(x_size), ny1_(y1_size), ny2_(y2_size), law_(std::move(law)), structure_(structure) {
    if (nx_ <= 0 || ny1_ <= 0 || ny2_ <= 0)
        throw validation_error("wiretap channel: alphabet sizes must be positive");
    if (law_.input_sizes() != std::vector<int>{nx_} || law_.output_size() != ny1_ * ny2_)
        throw validation_error("wiretap channel: law dimensions do not match alphabets");

    if (structure_ == ChannelStructure::non_degraded) {
        double resid = 0.0;
        for (int x = 0; x < nx_; ++x) {
            auto s = law_.slice(static_cast<std::size_t>(x));
            for (int y1 = 0; y1 < ny1_; ++y1) {
                double m1 = 0.0;
                for (int y2 = 0; y2 < ny2_; ++y2) m1 += s[static_cast<std::size_t>(y1) * ny2_ + y2];
                for (int y2 = 0; y2 < ny2_; ++y2) {
                    double m2 = 0.0;
                    for (int z = 0; z < ny1_; ++z) m2 += s[static_cast<std::size_t>(z) * ny2_ + y2];
                    resid = std::max(resid,
                                     std::abs(s[static_cast<std::size_t>(y1) * ny2_ + y2] - m1 * m2));
                }
            }
        }
        if (resid > kFactorizationTol)
            throw validation_error(
                "wiretap channel: tagged non_degraded but P(y1,y2|x) != P(y1|x)P(y2|x); "
                "max residual " + std::to_string(resid));
    } else if (structure_ == ChannelStructure::physically_degraded) {
        const double resid = degrading_matrix_residual(main_marginal(), wiretap_marginal());
        if (resid > kDegradingTol)
            throw validation_error(
                "wiretap channel: tagged physically_degraded but no stochastic degrading matrix "
                "reproduces P(y2|x); best residual " + std::to_string(resid));
    }
}

ConditionalPmf WiretapChannel::main_marginal() const {
    std::vector<double> t(static_cast<std::size_t>(nx_) * ny1_, 0.0);
    for (int x = 0; x < nx_; ++x) {
        auto s = law_.slice(static_cast<std::size_t>(x));
        for (int y1 = 0; y1 < ny1_; ++y1)
            for (int y2 = 0; y2 < ny2_; ++y2)
                t[static_cast<std::size_t>(x) * ny1_ + y1] += s[static_cast<std::size_t>(y1) * ny2_ + y2];
    }
    return ConditionalPmf({nx_}, ny1_, std::move(t), "P(y1|x)");
}

ConditionalPmf WiretapChannel::wiretap_marginal() const {
    std::vector<double> t(static_cast<std::size_t>(nx_) * ny2_, 0.0);
    for (int x = 0; x < nx_; ++x) {
        auto s = law_.slice(static_cast<std::size_t>(x));
        for (int y1 = 0; y1 < ny1_; ++y1)
            for (int y2 = 0; y2 < ny2_; ++y2)
                t[static_cast<std::size_t>(x) * ny2_ + y2] += s[static_cast<std::size_t>(y1) * ny2_ + y2];
    }
    return ConditionalPmf({nx_}, ny2_, std::move(t), "P(y2|x)");
}

WiretapChannel make_binary_channel(const BinaryWiretapParams& params) {
    const double p1 = params.p1, p2 = params.p2;
    std::vector<double> law(8);
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2) {
                const double a = (y1 == x) ? 1.0 - p1 : p1;
                const double b = (y2 == x) ? 1.0 - p2 : p2;
                law[static_cast<std::size_t>(x) * 4 + y1 * 2 + y2] = a * b;
            }
    return WiretapChannel(2, 2, 2, ConditionalPmf({2}, 4, std::move(law), "binary law"),
                          ChannelStructure::non_degraded);
}

WiretapChannel make_degraded_channel(const ConditionalPmf& main, const ConditionalPmf& degrader) {
    if (main.input_sizes().size() != 1)
        throw validation_error("make_degraded_channel: main channel must condition on x only");
    const int nx = main.input_sizes()[0];
    const int ny1 = main.output_size();
    if (degrader.input_sizes() != std::vector<int>{ny1})
        throw validation_error("make_degraded_channel: degrader input must match |Y1| = " +
                               std::to_string(ny1));
    const int ny2 = degrader.output_size();
    std::vector<double> law(static_cast<std::size_t>(nx) * ny1 * ny2);
    for (int x = 0; x < nx; ++x)
        for (int y1 = 0; y1 < ny1; ++y1) {
            const double m = main.slice(static_cast<std::size_t>(x))[y1];
            auto d = degrader.slice(static_cast<std::size_t>(y1));
            for (int y2 = 0; y2 < ny2; ++y2)
                law[(static_cast<std::size_t>(x) * ny1 + y1) * ny2 + y2] = m * d[y2];
        }
    return WiretapChannel(nx, ny1, ny2, ConditionalPmf({nx}, ny1 * ny2, std::move(law), "degraded law"),
                          ChannelStructure::physically_degraded);
}

WiretapChannel make_channel(int x_size, int y1_size, int y2_size, std::vector<double> law,
                            ChannelStructure structure) {
    return WiretapChannel(x_size, y1_size, y2_size,
                          ConditionalPmf({x_size}, y1_size * y2_size, std::move(law), "channel law"),
                          structure);
}

double degrading_matrix_residual(const ConditionalPmf& main, const ConditionalPmf& wiretap) {
    const int nx = main.input_sizes()[0];
    const int n1 = main.output_size();
    const int n2 = wiretap.output_size();

    // variables: d[y1*n2+y2] (n1*n2), t, s1 (nx*n2), s2 (nx*n2)
    const std::size_t nd = static_cast<std::size_t>(n1) * n2;
    const std::size_t nvars = nd + 1 + 2 * static_cast<std::size_t>(nx) * n2;
    const std::size_t t_col = nd;
    const std::size_t s1_col = nd + 1;
    const std::size_t s2_col = s1_col + static_cast<std::size_t>(nx) * n2;

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (int x = 0; x < nx; ++x)
        for (int y2 = 0; y2 < n2; ++y2) {
            std::vector<double> up(nvars, 0.0), dn(nvars, 0.0);
            for (int y1 = 0; y1 < n1; ++y1) {
                const double w = main.slice(static_cast<std::size_t>(x))[y1];
                up[static_cast<std::size_t>(y1) * n2 + y2] = w;
                dn[static_cast<std::size_t>(y1) * n2 + y2] = w;
            }
            const std::size_t k = static_cast<std::size_t>(x) * n2 + y2;
            up[t_col] = -1.0;
            up[s1_col + k] = 1.0;
            dn[t_col] = 1.0;
            dn[s2_col + k] = -1.0;
            A.push_back(std::move(up));
            b.push_back(wiretap.slice(static_cast<std::size_t>(x))[y2]);
            A.push_back(std::move(dn));
            b.push_back(wiretap.slice(static_cast<std::size_t>(x))[y2]);
        }
    for (int y1 = 0; y1 < n1; ++y1) {
        std::vector<double> row(nvars, 0.0);
        for (int y2 = 0; y2 < n2; ++y2) row[static_cast<std::size_t>(y1) * n2 + y2] = 1.0;
        A.push_back(std::move(row));
        b.push_back(1.0);
    }
    std::vector<double> c(nvars, 0.0);
    c[t_col] = 1.0;

    auto res = detail::solve_lp(std::move(A), std::move(b), std::move(c));
    if (!res.feasible)
        throw validation_error("degrading feasibility LP unexpectedly infeasible");
    return std::max(0.0, res.objective);
}

StructureReport validate_structure(const WiretapChannel& ch) {
    StructureReport rep{};
    double resid = 0.0;
    for (int x = 0; x < ch.x_size(); ++x) {
        auto s = ch.law().slice(static_cast<std::size_t>(x));
        for (int y1 = 0; y1 < ch.y1_size(); ++y1) {
            double m1 = 0.0;
            for (int y2 = 0; y2 < ch.y2_size(); ++y2)
                m1 += s[static_cast<std::size_t>(y1) * ch.y2_size() + y2];
            for (int y2 = 0; y2 < ch.y2_size(); ++y2) {
                double m2 = 0.0;
                for (int z = 0; z < ch.y1_size(); ++z)
                    m2 += s[static_cast<std::size_t>(z) * ch.y2_size() + y2];
                resid = std::max(resid, std::abs(s[static_cast<std::size_t>(y1) * ch.y2_size() + y2] -
                                                 m1 * m2));
            }
        }
    }
    rep.factorization_residual = resid;
    rep.factorizes = resid <= kFactorizationTol;

    if (ch.x_size() <= kFeasibilityAlphabetCap && ch.y1_size() <= kFeasibilityAlphabetCap &&
        ch.y2_size() <= kFeasibilityAlphabetCap) {
        rep.degrading_residual = degrading_matrix_residual(ch.main_marginal(), ch.wiretap_marginal());
        rep.degradable = rep.degrading_residual <= kDegradingTol
                             ? StructureReport::Degradable::yes
                             : StructureReport::Degradable::no;
    } else {
        rep.degrading_residual = -1.0;
        rep.degradable = StructureReport::Degradable::unchecked;
    }

    if (rep.factorizes)
        rep.suggested = ChannelStructure::non_degraded;
    else if (rep.degradable == StructureReport::Degradable::yes)
        rep.suggested = ChannelStructure::physically_degraded;
    else
        rep.suggested = ChannelStructure::general;
    return rep;
}

std::string StructureReport::describe() const {
    std::ostringstream os;
    os << "factorizes=" << (factorizes ? "yes" : "no")
       << " (residual " << factorization_residual << "), degradable=";
    switch (degradable) {
        case Degradable::yes: os << "yes"; break;
        case Degradable::no: os << "no"; break;
        case Degradable::unchecked: os << "unchecked"; break;
    }
    if (degradable != Degradable::unchecked) os << " (residual " << degrading_residual << ")";
    os << ", suggested=" << to_string(suggested);
    return os.str();
}

WiretapChannel parse_channel_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(origin + ": JSON parse error: " + e.what());
    }
    try {
        if (!j.is_object()) throw validation_error("top-level value must be an object");
        for (const char* f : {"x_size", "y1_size", "y2_size", "law"})
            if (!j.contains(f)) throw validation_error(std::string("missing field \"") + f + "\"");
        const int nx = j.at("x_size").get<int>();
        const int ny1 = j.at("y1_size").get<int>();
        const int ny2 = j.at("y2_size").get<int>();
        if (nx <= 0 || ny1 <= 0 || ny2 <= 0)
            throw validation_error("alphabet sizes must be positive");
        const auto& law = j.at("law");
        if (!law.is_array() || static_cast<int>(law.size()) != nx)
            throw validation_error("field \"law\" must be an array of length x_size");
        std::vector<double> flat(static_cast<std::size_t>(nx) * ny1 * ny2);
        for (int x = 0; x < nx; ++x) {
            const auto& lx = law.at(static_cast<std::size_t>(x));
            if (!lx.is_array() || static_cast<int>(lx.size()) != ny1)
                throw validation_error("law[" + std::to_string(x) + "] must have y1_size rows");
            for (int y1 = 0; y1 < ny1; ++y1) {
                const auto& ly = lx.at(static_cast<std::size_t>(y1));
                if (!ly.is_array() || static_cast<int>(ly.size()) != ny2)
                    throw validation_error("law[" + std::to_string(x) + "][" + std::to_string(y1) +
                                           "] must have y2_size entries");
                for (int y2 = 0; y2 < ny2; ++y2) {
                    const auto& cell = ly.at(static_cast<std::size_t>(y2));
                    if (!cell.is_number())
                        throw validation_error("law[" + std::to_string(x) + "][" +
                                               std::to_string(y1) + "][" + std::to_string(y2) +
                                               "] is not a number");
                    const double v = cell.get<double>();
                    if (v < 0.0)
                        throw validation_error("law[" + std::to_string(x) + "][" +
                                               std::to_string(y1) + "][" + std::to_string(y2) +
                                               "] is negative (" + fmt17(v) + ")");
                    flat[(static_cast<std::size_t>(x) * ny1 + y1) * ny2 + y2] = v;
                }
            }
        }
        ChannelStructure structure = ChannelStructure::general;
        if (j.contains("structure")) structure = structure_from_string(j.at("structure").get<std::string>());
        return make_channel(nx, ny1, ny2, std::move(flat), structure);
    } catch (const validation_error& e) {
        throw validation_error(origin + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(origin + ": " + e.what());
    }
}

WiretapChannel load_channel(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_json(buf.str(), path);
}

std::string channel_to_json(const WiretapChannel& ch) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"x_size\": " << ch.x_size() << ",\n";
    os << "  \"y1_size\": " << ch.y1_size() << ",\n";
    os << "  \"y2_size\": " << ch.y2_size() << ",\n";
    os << "  \"structure\": \"" << to_string(ch.structure()) << "\",\n";
    os << "  \"law\": [\n";
    for (int x = 0; x < ch.x_size(); ++x) {
        os << "    [";
        for (int y1 = 0; y1 < ch.y1_size(); ++y1) {
            os << "[";
            for (int y2 = 0; y2 < ch.y2_size(); ++y2) {
                os << fmt17(ch.prob(x, y1, y2));
                if (y2 + 1 < ch.y2_size()) os << ", ";
            }
            os << "]";
            if (y1 + 1 < ch.y1_size()) os << ", ";
        }
        os << "]";
        if (x + 1 < ch.x_size()) os << ",";
        os << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

void save_channel(const WiretapChannel& ch, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error(path + ": cannot open file for writing");
    out << channel_to_json(ch);
}

} // namespace wtfb
