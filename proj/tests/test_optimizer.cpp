#include <doctest.h>

#include <cmath>

#include "wtfb/optimizer.hpp"

using namespace wtfb;

TEST_CASE("stick-breaking decode/encode round trip") {
    SimplexSpace space;
    space.block_sizes = {3, 2};
    REQUIRE(space.dof() == 3);
    const std::vector<double> probs{0.2, 0.5, 0.3, 0.75, 0.25};
    const auto gauge = space.encode(probs);
    std::vector<double> back(space.prob_len());
    space.decode(gauge, back);
    for (std::size_t i = 0; i < probs.size(); ++i)
        CHECK(back[i] == doctest::Approx(probs[i]).epsilon(1e-12));
}

TEST_CASE("decode always lands on the simplex") {
    SimplexSpace space;
    space.block_sizes = {4};
    std::vector<double> probs(4);
    for (double g1 : {0.0, 0.3, 1.0})
        for (double g2 : {0.0, 0.7, 1.0})
            for (double g3 : {0.0, 0.5, 1.0}) {
                const std::vector<double> gauge{g1, g2, g3};
                space.decode(gauge, probs);
                double sum = 0.0;
                for (double p : probs) {
                    CHECK(p >= 0.0);
                    sum += p;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
}

TEST_CASE("maximize: concave quadratic on one simplex") {
    SimplexSpace space;
    space.block_sizes = {3};
    // maximized at p = (0.5, 0.3, 0.2)
    ProbObjective obj = [](std::span<const double> p) {
        const double d0 = p[0] - 0.5, d1 = p[1] - 0.3, d2 = p[2] - 0.2;
        return 1.0 - (d0 * d0 + d1 * d1 + d2 * d2);
    };
    AscentSettings s;
    s.min_step = 1e-9;
    const auto r = maximize_over_simplexes(space, obj, s);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.probs[0] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(r.probs[1] == doctest::Approx(0.3).epsilon(1e-4));
}

TEST_CASE("maximize: diagonal ridge needs coordinated moves") {
    SimplexSpace space;
    space.block_sizes = {2, 2};
    // -|p - q| + (p + q)/2: single-coordinate steps stall anywhere on p = q,
    // the maximum 1.0 sits at p = q = 1
    ProbObjective obj = [](std::span<const double> p) {
        return -std::abs(p[0] - p[2]) + 0.5 * (p[0] + p[2]);
    };
    AscentSettings s;
    s.min_step = 1e-10;
    const auto r = maximize_over_simplexes(space, obj, s);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("determinism: identical seeds give identical results") {
    SimplexSpace space;
    space.block_sizes = {2, 2, 2, 2, 2, 2, 2, 2}; // dof 8, beyond any product grid
    ProbObjective obj = [](std::span<const double> p) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); i += 2) s += p[i] * (1.0 - p[i]) * (i + 1);
        return s;
    };
    AscentSettings s;
    s.max_grid_points = 2000;
    s.seed = 1234;
    const auto a = maximize_over_simplexes(space, obj, s);
    const auto b = maximize_over_simplexes(space, obj, s);
    CHECK(a.value == b.value);
    CHECK(a.gauge == b.gauge);
    CHECK(a.trace.evaluations == b.trace.evaluations);
    s.seed = 77;
    const auto c = maximize_over_simplexes(space, obj, s);
    CHECK(c.value == doctest::Approx(a.value).epsilon(1e-6)); // same optimum, other path
}

TEST_CASE("serial and parallel modes agree bit-for-bit") {
    SimplexSpace space;
    space.block_sizes = {2, 2, 2, 2, 2, 2, 2};
    ProbObjective obj = [](std::span<const double> p) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) s += p[i] * p[i + 1];
        return s;
    };
    AscentSettings s;
    s.max_grid_points = 3000;
    s.exec = ExecMode::serial;
    const auto a = maximize_over_simplexes(space, obj, s);
    s.exec = ExecMode::openmp;
    const auto b = maximize_over_simplexes(space, obj, s);
    CHECK(a.value == b.value);
    CHECK(a.gauge == b.gauge);
    CHECK(a.trace.evaluations == b.trace.evaluations);
}

TEST_CASE("structured seeds join the pool") {
    SimplexSpace space;
    space.block_sizes = {2};
    // spike objective invisible to the grid
    ProbObjective obj = [](std::span<const double> p) {
        return -std::abs(p[0] - 0.317712345) * 1000.0;
    };
    AscentSettings s;
    s.max_rounds = 0; // no ascent: only the pool matters
    const std::vector<std::vector<double>> seeds{{0.317712345}};
    const auto r = maximize_over_simplexes(space, obj, s, seeds);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
}
