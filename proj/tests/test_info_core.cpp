#include <doctest.h>

#include <cmath>

#include "wtfb/checks.hpp"
#include "wtfb/info.hpp"
#include "wtfb/rng.hpp"

using namespace wtfb;

namespace {

// independent high-precision oracle for -sum p log2 p
double entropy_oracle(std::span<const double> p) {
    long double h = 0.0L;
    for (double x : p)
        if (x > 0.0) h -= static_cast<long double>(x) * std::log2l(static_cast<long double>(x));
    return static_cast<double>(h);
}

constexpr int kX[] = {0};
constexpr int kY[] = {1};
constexpr int kXY[] = {0, 1};
constexpr int kYZ[] = {1, 2};

} // namespace

TEST_CASE("pmf validation") {
    CHECK_THROWS_AS(Pmf({0.5, -0.1, 0.6}), validation_error);
    CHECK_THROWS_AS(Pmf({0.5, 0.4}), validation_error);       // sums to 0.9
    CHECK_THROWS_AS(Pmf({0.5, 0.4999999}), validation_error); // off by 1e-7 > 1e-9
    CHECK_NOTHROW(Pmf({0.5, 0.4999999999}));                  // within 1e-9, renormalized
    const Pmf p({0.25, 0.25, 0.5});
    double sum = 0.0;
    for (int i = 0; i < p.size(); ++i) sum += p[i];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("entropy examples") {
    CHECK(entropy(Pmf::uniform(2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy(Pmf::point_mass(4, 2)) == 0.0);
    const Pmf p({0.11, 0.89});
    CHECK(entropy(p) == doctest::Approx(0.4999159581645280).epsilon(1e-12));
    CHECK(std::abs(entropy(p) - entropy_oracle(p.probs())) < 1e-15);
}

TEST_CASE("binary_entropy examples and symmetry") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.2) == doctest::Approx(0.7219280948873623).epsilon(1e-12));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
    CHECK_THROWS_AS(binary_entropy(-0.01), validation_error);
    CHECK_THROWS_AS(binary_entropy(1.01), validation_error);
}

TEST_CASE("star examples") {
    CHECK(star(0.3, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(star(0.7, 0.0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(star(0.5, 0.2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(star(0.25, 0.4) == doctest::Approx(star(0.4, 0.25)).epsilon(1e-15));
    CHECK_THROWS_AS(star(-0.1, 0.5), validation_error);
    CHECK_THROWS_AS(star(0.5, 1.1), validation_error);
}

TEST_CASE("mutual information examples") {
    // product distribution: independence
    {
        std::vector<double> t;
        const Pmf a({0.3, 0.7}), b({0.2, 0.5, 0.3});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) t.push_back(a[i] * b[j]);
        const JointPmf j({2, 3}, std::move(t));
        CHECK(std::abs(mutual_information(j, kX, kY)) < 1e-12);
    }
    // copied axis: I(X;Y) = H(X)
    {
        const JointPmf j({2, 2}, {0.3, 0.0, 0.0, 0.7});
        CHECK(mutual_information(j, kX, kY) ==
              doctest::Approx(entropy_oracle(std::vector<double>{0.3, 0.7})).epsilon(1e-12));
    }
    // BSC(0.1), uniform input: I = 1 - h(0.1)
    {
        const JointPmf j({2, 2}, {0.45, 0.05, 0.05, 0.45});
        CHECK(mutual_information(j, kX, kY) == doctest::Approx(0.5310044064107188).epsilon(1e-12));
    }
    const JointPmf j({2, 2}, {0.25, 0.25, 0.25, 0.25});
    const int overlap[] = {0};
    CHECK_THROWS_AS(mutual_information(j, overlap, overlap), validation_error);
}

TEST_CASE("conditional entropy examples") {
    // deterministic target of given
    {
        const JointPmf j({2, 2}, {0.4, 0.0, 0.0, 0.6});
        CHECK(std::abs(conditional_entropy(j, kY, kX)) < 1e-12);
    }
    // independence: H(target)
    {
        std::vector<double> t;
        const Pmf a({0.3, 0.7}), b({0.6, 0.4});
        for (int i = 0; i < 2; ++i)
            for (int j2 = 0; j2 < 2; ++j2) t.push_back(a[i] * b[j2]);
        const JointPmf j({2, 2}, std::move(t));
        CHECK(conditional_entropy(j, kY, kX) ==
              doctest::Approx(entropy_oracle(std::vector<double>{0.6, 0.4})).epsilon(1e-12));
    }
    // additive noise: Y = X ^ Z with Z ~ Bern(0.05): H(Y|X) = h(0.05)
    {
        std::vector<double> t;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t.push_back(0.5 * ((y == x) ? 0.95 : 0.05));
        const JointPmf j({2, 2}, std::move(t));
        CHECK(conditional_entropy(j, kY, kX) ==
              doctest::Approx(0.2863969571159561).epsilon(1e-12));
    }
}

TEST_CASE("assemble_joint factorization and marginals") {
    // all uniform, identity channel: P(u) marginal stays uniform
    {
        const Pmf pu = Pmf::uniform(2);
        const int ident[] = {0, 1};
        const ConditionalPmf pxu = ConditionalPmf::deterministic({2}, 2, ident);
        std::vector<double> law(8, 0.0);
        law[0 * 4 + 0 * 2 + 0] = 1.0; // y1 = y2 = x
        law[1 * 4 + 1 * 2 + 1] = 1.0;
        const ConditionalPmf ch({2}, 4, std::move(law));
        const ConditionalPmf pv({2, 2}, 1, std::vector<double>(4, 1.0));
        const JointPmf j = assemble_joint(pu, pxu, ch, pv);
        REQUIRE(j.rank() == 5);
        const Pmf mu = j.marginal_pmf(0);
        CHECK(mu[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(mu[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
    // constant V marginalizes to the 4-axis assembly
    {
        const Pmf pu({0.4, 0.6});
        const ConditionalPmf pxu({2}, 2, {0.8, 0.2, 0.3, 0.7});
        std::vector<double> law;
        for (int x = 0; x < 2; ++x)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2)
                    law.push_back(((y1 == x) ? 0.9 : 0.1) * ((y2 == x) ? 0.8 : 0.2));
        const ConditionalPmf ch({2}, 4, std::move(law));
        const ConditionalPmf pv({2, 2}, 1, std::vector<double>(4, 1.0));
        const JointPmf j5 = assemble_joint(pu, pxu, ch, pv);
        const JointPmf j4 = assemble_joint_uxy(pu, pxu, ch, 2);
        const int keep[] = {0, 2, 3, 4};
        const JointPmf m4 = j5.marginal(keep);
        for (std::size_t f = 0; f < m4.table_size(); ++f)
            CHECK(m4.probs()[f] == doctest::Approx(j4.probs()[f]).epsilon(1e-14));
    }
    // binary law at alpha = 0.5, p1 = 0.1, p2 = 0.2: P(Y1 = 0) = 0.5
    {
        const Pmf pu({0.5, 0.5});
        const int ident[] = {0, 1};
        const ConditionalPmf pxu = ConditionalPmf::deterministic({2}, 2, ident);
        std::vector<double> law;
        for (int x = 0; x < 2; ++x)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2)
                    law.push_back(((y1 == x) ? 0.9 : 0.1) * ((y2 == x) ? 0.8 : 0.2));
        const ConditionalPmf ch({2}, 4, std::move(law));
        const ConditionalPmf pv({2, 2}, 2, {0.3, 0.7, 0.6, 0.4, 0.5, 0.5, 0.2, 0.8});
        const JointPmf j = assemble_joint(pu, pxu, ch, pv);
        const Pmf y1m = j.marginal_pmf(3);
        CHECK(y1m[0] == doctest::Approx(0.5).epsilon(1e-12));
    }
    // dimension mismatch
    {
        const Pmf pu = Pmf::uniform(2);
        const ConditionalPmf pxu({3}, 2, std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
        const ConditionalPmf ch({2}, 4, std::vector<double>(8, 0.25));
        const ConditionalPmf pv({2, 2}, 1, std::vector<double>(4, 1.0));
        CHECK_THROWS_AS(assemble_joint(pu, pxu, ch, pv), validation_error);
    }
}

TEST_CASE("entropy bounds and information inequalities on random joints") {
    for (int d = 0; d < 200; ++d) {
        const int nx = 2 + static_cast<int>(hash_u64(100, d) % 3);
        const Pmf p = random_pmf(hash_u64(7, d), nx);
        const double h = entropy(p);
        CHECK(h >= -1e-12);
        CHECK(h <= std::log2(static_cast<double>(nx)) + 1e-12);
    }
    for (int d = 0; d < 200; ++d) {
        SplitMix rng(hash_u64(8, d));
        std::vector<double> t(8);
        double sum = 0.0;
        for (double& x : t) {
            x = -std::log(1.0 - rng.next_unit() + 1e-300);
            sum += x;
        }
        for (double& x : t) x /= sum;
        const JointPmf j({2, 2, 2}, std::move(t));

        const double i_xy = mutual_information(j, kX, kY);
        CHECK(i_xy >= 0.0);
        // monotonicity under group growth
        CHECK(mutual_information(j, kX, kYZ) >= i_xy - 1e-12);
        // chain rule residual
        const double resid = std::abs(entropy_of(j, kXY) - entropy_of(j, kY) -
                                      conditional_entropy(j, kX, kY));
        CHECK(resid < 1e-9);
    }
}

TEST_CASE("assemble_joint is relabeling-equivariant") {
    // swapping the two u symbols everywhere permutes the joint accordingly
    const Pmf pu({0.3, 0.7});
    const Pmf pu_swapped({0.7, 0.3});
    const ConditionalPmf pxu({2}, 2, {0.8, 0.2, 0.4, 0.6});
    const ConditionalPmf pxu_swapped({2}, 2, {0.4, 0.6, 0.8, 0.2});
    std::vector<double> law;
    for (int x = 0; x < 2; ++x)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2)
                law.push_back(((y1 == x) ? 0.85 : 0.15) * ((y2 == x) ? 0.7 : 0.3));
    const ConditionalPmf ch({2}, 4, std::move(law));
    const ConditionalPmf pv({2, 2}, 2, {0.3, 0.7, 0.6, 0.4, 0.5, 0.5, 0.2, 0.8});
    const ConditionalPmf pv_swapped({2, 2}, 2, {0.5, 0.5, 0.2, 0.8, 0.3, 0.7, 0.6, 0.4});

    const JointPmf a = assemble_joint(pu, pxu, ch, pv);
    const JointPmf b = assemble_joint(pu_swapped, pxu_swapped, ch, pv_swapped);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            for (int x = 0; x < 2; ++x)
                for (int y1 = 0; y1 < 2; ++y1)
                    for (int y2 = 0; y2 < 2; ++y2) {
                        const int ia[] = {u, v, x, y1, y2};
                        const int ib[] = {1 - u, v, x, y1, y2};
                        CHECK(a.at(ia) == doctest::Approx(b.at(ib)).epsilon(1e-14));
                    }
}

TEST_CASE("dense cap is enforced") {
    CHECK_THROWS_AS(JointPmf({400, 400, 400}, std::vector<double>{}), validation_error);
}
