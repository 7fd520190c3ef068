#include <doctest.h>

#include <cmath>

#include "wtfb/binary_bounds.hpp"
#include "wtfb/checks.hpp"
#include "wtfb/info.hpp"
#include "wtfb/rng.hpp"

using namespace wtfb;

namespace {
double h(double p) { return binary_entropy(p); }
}

TEST_CASE("cb_s examples") {
    CHECK(cb_s(BinaryWiretapParams(0.15, 0.15)) == doctest::Approx(0.0));
    CHECK(cb_s(BinaryWiretapParams(0.2, 0.1)) == doctest::Approx(0.0)); // clipped
    CHECK(cb_s(BinaryWiretapParams(0.05, 0.2)) ==
          doctest::Approx(h(0.2) - h(0.05)).epsilon(1e-12));
}

TEST_CASE("cb_in examples and alpha cross-check") {
    // p1 = 0.2: capacity-limited for every p2
    for (double p2 : {0.01, 0.2, 0.45})
        CHECK(cb_in(BinaryWiretapParams(0.2, p2)) == doctest::Approx(1 - h(0.2)).epsilon(1e-12));
    // both channels noiseless
    CHECK(cb_in(BinaryWiretapParams(0.0, 0.0)) == doctest::Approx(0.0));
    // p1 = 0.05, p2 = 0.3: min{h(0.3), 1 - h(0.05)}
    CHECK(cb_in(BinaryWiretapParams(0.05, 0.3)) ==
          doctest::Approx(std::min(h(0.3), 1 - h(0.05))).epsilon(1e-12));

    // the alpha = 1/2 simplification matches the maximized original
    for (double p1 : {0.02, 0.1, 0.25})
        for (double p2 : {0.01, 0.15, 0.4}) {
            const BinaryWiretapParams p(p1, p2);
            CHECK(cb_in_alpha_max(p) == doctest::Approx(cb_in(p)).epsilon(1e-9));
        }
}

TEST_CASE("expression_A special informants") {
    // uninformative V: A = I(X;Y1) = h(a*p1) - h(p1)
    for (double g : {0.0, 0.3, 1.0}) {
        const BinaryAuxParams prm(0.35, {g, g, g, g});
        CHECK(expression_A(0.1, prm) ==
              doctest::Approx(h(star(0.35, 0.1)) - h(0.1)).epsilon(1e-9));
    }
    // V = X reveals the input: A = H(X) = 1 at alpha = 1/2
    {
        const BinaryAuxParams prm(0.5, {1.0, 1.0, 0.0, 0.0});
        CHECK(expression_A(0.1, prm) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // V = Y1 duplicates the output: A = I(X;Y1)
    {
        const BinaryAuxParams prm(0.5, {1.0, 0.0, 1.0, 0.0});
        CHECK(expression_A(0.1, prm) == doctest::Approx(1 - h(0.1)).epsilon(1e-12));
    }
}

TEST_CASE("expression_A equals I(X;Y1,V) on random draws") {
    const auto res = check_expression_a_oracle(1000, 20250809);
    CHECK(res.pass);
    CHECK(res.worst < 1e-9);
}

TEST_CASE("expression_B examples") {
    // p2 = 0.5 makes the wiretap output useless: B = H(Y1)
    for (double a : {0.2, 0.5, 0.8})
        CHECK(expression_B(BinaryWiretapParams(0.1, 0.499999999), a) ==
              doctest::Approx(h(star(a, 0.1))).epsilon(1e-6));
    // p1 = 0: Y1 = X, so B = H(X|Y2)
    {
        const double a = 0.3, p2 = 0.2;
        // H(X|Y2) = H(X) + H(Y2|X) - H(Y2)
        const double hx_y2 = h(a) + h(p2) - h(star(a, p2));
        CHECK(expression_B(BinaryWiretapParams(0.0, p2), a) == doctest::Approx(hx_y2).epsilon(1e-9));
    }
    // direct value at alpha = 1/2: H(Y1|Y2) = h(p1*p2)
    CHECK(expression_B(BinaryWiretapParams(0.1, 0.2), 0.5) ==
          doctest::Approx(h(star(0.1, 0.2))).epsilon(1e-12));
}

TEST_CASE("expression_B equals H(Y1|Y2) on random draws") {
    const auto res = check_expression_b_oracle(1000, 424242);
    CHECK(res.pass);
    CHECK(res.worst < 1e-9);
}

TEST_CASE("cb_in_new objective is symmetric under the channel relabeling") {
    for (int d = 0; d < 200; ++d) {
        SplitMix rng(hash_u64(99, d));
        const BinaryWiretapParams p(0.499 * rng.next_unit(), 0.499 * rng.next_unit());
        const double a = rng.next_unit();
        const std::array<double, 4> g{rng.next_unit(), rng.next_unit(), rng.next_unit(),
                                      rng.next_unit()};
        const BinaryAuxParams prm(a, g);
        const BinaryAuxParams mirrored(1.0 - a, {g[3], g[2], g[1], g[0]});
        CHECK(cb_in_new_objective(p, prm) ==
              doctest::Approx(cb_in_new_objective(p, mirrored)).epsilon(1e-10));
    }
}

TEST_CASE("cb_in_new finds the analytic maximum min{h(p1)+h(p2), 1-h(p1)}") {
    // with V free, the first arm is maximized by V = X, giving the closed form
    for (double p1 : {0.05, 0.1, 0.2})
        for (double p2 : {0.01, 0.03, 0.2, 0.4}) {
            const auto r = cb_in_new(BinaryWiretapParams(p1, p2));
            const double analytic = std::min(h(p1) + h(p2), 1 - h(p1));
            CHECK(r.value == doctest::Approx(analytic).epsilon(5e-7));
        }
}

TEST_CASE("cb_in_new dominates cb_in, strictly at small p2") {
    for (double p2 : {0.01, 0.02, 0.03}) {
        const BinaryWiretapParams p(0.05, p2);
        const auto r = cb_in_new(p);
        CHECK(r.value >= cb_in(p) + 0.05); // margin is about h(p2)
    }
    for (double p2 : {0.2, 0.45}) {
        const BinaryWiretapParams p(0.05, p2);
        CHECK(cb_in_new(p).value >= cb_in(p) - 1e-6);
    }
}

TEST_CASE("cb_out examples") {
    // p1 = 0.2: capacity-limited, equals 1 - h(0.2)
    CHECK(cb_out(BinaryWiretapParams(0.2, 0.3)).value ==
          doctest::Approx(1 - h(0.2)).epsilon(1e-9));
    // both noiseless: B = 0 forces the bound to zero
    CHECK(cb_out(BinaryWiretapParams(0.0, 0.0)).value == doctest::Approx(0.0).epsilon(1e-9));
    // pair-entropy-limited case: value = h(p1*p2) at alpha = 1/2
    CHECK(cb_out(BinaryWiretapParams(0.1, 0.01)).value ==
          doctest::Approx(h(star(0.1, 0.01))).epsilon(1e-9));
}

TEST_CASE("binary bound chain on a p2 grid") {
    for (double p1 : {0.05, 0.1, 0.2}) {
        for (int k = 0; k < 7; ++k) {
            const double p2 = 0.01 + 0.08 * k;
            const BinaryWiretapParams p(p1, p2);
            const auto inew = cb_in_new(p);
            const auto out = cb_out(p);
            CHECK(cb_s(p) <= cb_in(p) + 1e-12);
            CHECK(cb_in(p) <= inew.value + 1e-6);
            CHECK(cb_in(p) <= out.value + 1e-9); // secret-key rate vs pair-entropy bound
            for (double v : {cb_s(p), cb_in(p), inew.value, out.value}) {
                CHECK(v >= -1e-12);
                CHECK(v <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("sweep output shape and determinism") {
    BinaryOptSettings s;
    s.seed = 7;
    const std::vector<double> grid{0.05, 0.15, 0.25};
    const auto rows = sweep(0.1, grid, s);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].p2 == grid[i]);
    const auto rows2 = sweep(0.1, grid, s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].cb_in_new == rows2[i].cb_in_new);
        CHECK(rows[i].cb_out == rows2[i].cb_out);
        CHECK(rows[i].alpha_star == rows2[i].alpha_star);
    }
    CHECK_THROWS_AS(sweep(0.1, std::vector<double>{0.6}, s), validation_error);
}

TEST_CASE("sweep matches fig-11 style constancy at p1 = 0.2") {
    BinaryOptSettings s;
    const std::vector<double> grid{0.01, 0.17, 0.33, 0.49};
    const auto rows = sweep(0.2, grid, s);
    for (const auto& r : rows) {
        CHECK(r.cb_in == doctest::Approx(1 - h(0.2)).epsilon(2e-3));
        CHECK(r.cb_in_new == doctest::Approx(1 - h(0.2)).epsilon(2e-3));
        CHECK(r.cb_out == doctest::Approx(1 - h(0.2)).epsilon(2e-3));
    }
}
