#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wtfb/channel.hpp"
#include "wtfb/checks.hpp"
#include "wtfb/info.hpp"
#include "wtfb/rng.hpp"

using namespace wtfb;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

ConditionalPmf bsc(double p) { return ConditionalPmf({2}, 2, {1 - p, p, p, 1 - p}); }

} // namespace

TEST_CASE("binary wiretap params domain") {
    CHECK_NOTHROW(BinaryWiretapParams(0.0, 0.0));
    CHECK_NOTHROW(BinaryWiretapParams(0.499, 0.1));
    CHECK_THROWS_AS(BinaryWiretapParams(0.5, 0.1), validation_error);
    CHECK_THROWS_AS(BinaryWiretapParams(0.1, 0.5), validation_error);
    CHECK_THROWS_AS(BinaryWiretapParams(-0.01, 0.1), validation_error);
}

TEST_CASE("make_binary_channel examples") {
    // noiseless both outputs
    {
        const auto ch = make_binary_channel(BinaryWiretapParams(0.0, 0.0));
        CHECK(ch.prob(0, 0, 0) == doctest::Approx(1.0));
        CHECK(ch.prob(1, 1, 1) == doctest::Approx(1.0));
        CHECK(ch.prob(0, 1, 0) == doctest::Approx(0.0));
    }
    // independent crossovers multiply
    {
        const auto ch = make_binary_channel(BinaryWiretapParams(0.1, 0.2));
        CHECK(ch.prob(0, 1, 1) == doctest::Approx(0.1 * 0.2).epsilon(1e-12));
        CHECK(ch.structure() == ChannelStructure::non_degraded);
    }
    // symmetric agreement probability
    {
        const auto ch = make_binary_channel(BinaryWiretapParams(0.05, 0.05));
        const double agree = ch.prob(0, 0, 0) + ch.prob(0, 1, 1);
        CHECK(agree == doctest::Approx(0.905).epsilon(1e-12));
    }
}

TEST_CASE("binary marginal matches the star composition for any input bias") {
    for (int d = 0; d < 50; ++d) {
        SplitMix rng(hash_u64(42, d));
        const double p1 = 0.499 * rng.next_unit();
        const double alpha = rng.next_unit();
        const auto ch = make_binary_channel(BinaryWiretapParams(p1, 0.3));
        const auto main = ch.main_marginal();
        // P(Y1=0) = alpha*(1-p1) + (1-alpha)*p1 = star(alpha, p1)... with
        // alpha = P(x=0)
        const double py1_0 = alpha * main.slice(0)[0] + (1 - alpha) * main.slice(1)[0];
        CHECK(std::abs(py1_0 - star(alpha, p1)) < 1e-12);
    }
}

TEST_CASE("make_degraded_channel examples") {
    // identity degrader copies y1
    {
        const int ident[] = {0, 1};
        const auto ch = make_degraded_channel(bsc(0.1), ConditionalPmf::deterministic({2}, 2, ident));
        CHECK(ch.prob(0, 0, 0) == doctest::Approx(0.9));
        CHECK(ch.prob(0, 0, 1) == doctest::Approx(0.0));
        CHECK(ch.structure() == ChannelStructure::physically_degraded);
    }
    // composed crossover via star
    {
        const auto ch = make_degraded_channel(bsc(0.1), bsc(0.15));
        const auto w = ch.wiretap_marginal();
        CHECK(w.slice(0)[1] == doctest::Approx(star(0.1, 0.15)).epsilon(1e-12));
        CHECK(w.slice(0)[1] == doctest::Approx(0.22).epsilon(1e-12));
    }
    // uniform degrader leaves the wiretapper with nothing
    {
        const auto ch = make_degraded_channel(bsc(0.1), ConditionalPmf({2}, 2, {0.5, 0.5, 0.5, 0.5}));
        std::vector<double> t;
        for (int x = 0; x < 2; ++x)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2) t.push_back(0.5 * ch.prob(x, y1, y2));
        const JointPmf j({2, 2, 2}, std::move(t));
        const int X[] = {0}, Y2[] = {2};
        CHECK(std::abs(mutual_information(j, X, Y2)) < 1e-12);
    }
    // dimension mismatch
    CHECK_THROWS_AS(make_degraded_channel(bsc(0.1), ConditionalPmf({3}, 2, std::vector<double>(6, 0.5))),
                    validation_error);
}

TEST_CASE("validate_structure on the three canonical cases") {
    {
        const auto rep = validate_structure(make_binary_channel(BinaryWiretapParams(0.1, 0.2)));
        CHECK(rep.factorizes);
        CHECK(rep.suggested == ChannelStructure::non_degraded);
    }
    {
        const auto rep = validate_structure(make_degraded_channel(bsc(0.1), bsc(0.15)));
        CHECK(rep.degradable == StructureReport::Degradable::yes);
        CHECK(rep.suggested == ChannelStructure::physically_degraded);
    }
    {
        // correlated-noise law that neither factorizes nor degrades
        const std::vector<double> law{0.58, 0.02, 0.32, 0.08, 0.06, 0.34, 0.04, 0.56};
        const auto ch = make_channel(2, 2, 2, law, ChannelStructure::general);
        const auto rep = validate_structure(ch);
        CHECK_FALSE(rep.factorizes);
        CHECK(rep.degradable == StructureReport::Degradable::no);
        CHECK(rep.suggested == ChannelStructure::general);

        // cross-check the feasibility verdict with an exhaustive grid over
        // 2x2 degrading matrices
        const auto main = ch.main_marginal();
        const auto wire = ch.wiretap_marginal();
        double best = 1e9;
        const int steps = 400;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const double d00 = static_cast<double>(i) / steps;
                const double d10 = static_cast<double>(j) / steps;
                double worst = 0.0;
                for (int x = 0; x < 2; ++x) {
                    const double m0 = main.slice(static_cast<std::size_t>(x))[0];
                    const double m1 = main.slice(static_cast<std::size_t>(x))[1];
                    const double w0 = m0 * d00 + m1 * d10;
                    worst = std::max(worst,
                                     std::abs(w0 - wire.slice(static_cast<std::size_t>(x))[0]));
                    worst = std::max(worst, std::abs((m0 * (1 - d00) + m1 * (1 - d10)) -
                                                     wire.slice(static_cast<std::size_t>(x))[1]));
                }
                best = std::min(best, worst);
            }
        CHECK(best > 1e-3); // genuinely infeasible, far beyond the 1e-6 tolerance
        CHECK(rep.degrading_residual == doctest::Approx(best).epsilon(0.05));
    }
}

TEST_CASE("lp feasibility matches construction for degraded channels") {
    for (int d = 0; d < 30; ++d) {
        const auto ch = random_degraded_channel(hash_u64(5, d), 2, 3, 2);
        const auto rep = validate_structure(ch);
        CHECK(rep.degradable == StructureReport::Degradable::yes);
        CHECK(rep.degrading_residual < 1e-9);
    }
}

TEST_CASE("structure tags are validated at construction") {
    // a correlated law cannot be tagged non_degraded
    const std::vector<double> law{0.58, 0.02, 0.32, 0.08, 0.06, 0.34, 0.04, 0.56};
    CHECK_THROWS_AS(make_channel(2, 2, 2, law, ChannelStructure::non_degraded), validation_error);
    CHECK_THROWS_AS(make_channel(2, 2, 2, law, ChannelStructure::physically_degraded),
                    validation_error);
    CHECK_NOTHROW(make_channel(2, 2, 2, law, ChannelStructure::general));
}

TEST_CASE("channel json round trip is exact") {
    const auto ch = make_binary_channel(BinaryWiretapParams(0.1, 0.2));
    const auto path = temp_path("wtfb_test_channel.json");
    save_channel(ch, path);
    const auto back = load_channel(path);
    CHECK(back.x_size() == ch.x_size());
    CHECK(back.structure() == ch.structure());
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2) CHECK(back.prob(x, y1, y2) == ch.prob(x, y1, y2));
    // and the file itself reproduces byte-for-byte
    const auto path2 = temp_path("wtfb_test_channel2.json");
    save_channel(back, path2);
    std::ifstream a(path), b(path2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("channel file validation errors") {
    const auto path = temp_path("wtfb_bad_channel.json");
    {
        std::ofstream out(path);
        out << R"({"x_size":2,"y1_size":2,"y2_size":2,
                   "law":[[[0.9,-0.1],[0.1,0.1]],[[0.25,0.25],[0.25,0.25]]]})";
    }
    CHECK_THROWS_WITH_AS(load_channel(path), doctest::Contains("negative"), validation_error);
    {
        std::ofstream out(path);
        out << R"({"x_size":2,"y1_size":2,"y2_size":2,
                   "law":[[[0.7,0.1],[0.1,0.099]],[[0.25,0.25],[0.25,0.25]]]})";
    }
    CHECK_THROWS_AS(load_channel(path), validation_error); // slice sums to 0.999
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_WITH_AS(load_channel(path), doctest::Contains("parse error"), validation_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_channel("/nonexistent/wtfb.json"), validation_error);
}

TEST_CASE("well-formed binary channel file equals the constructor") {
    const auto path = temp_path("wtfb_binary_file.json");
    {
        std::ofstream out(path);
        out << R"({"x_size":2,"y1_size":2,"y2_size":2,"structure":"non_degraded",
                   "law":[[[0.72,0.18],[0.08,0.02]],[[0.02,0.08],[0.18,0.72]]]})";
    }
    const auto loaded = load_channel(path);
    const auto built = make_binary_channel(BinaryWiretapParams(0.1, 0.2));
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2)
                CHECK(loaded.prob(x, y1, y2) ==
                      doctest::Approx(built.prob(x, y1, y2)).epsilon(1e-12));
    std::filesystem::remove(path);
}
