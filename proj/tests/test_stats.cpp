#include <doctest.h>

#include <cmath>

#include "wtfb/rng.hpp"
#include "wtfb/stats.hpp"

using namespace wtfb;

TEST_CASE("regularized gamma at known points") {
    // P(1/2, x/2) is the chi-square(1) CDF; at x = 3.841458821 it is 0.95
    CHECK(regularized_gamma_p(0.5, 3.841458820694124 / 2) == doctest::Approx(0.95).epsilon(1e-9));
    CHECK(regularized_gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(regularized_gamma_p(2.5, 0.0) == 0.0);
    CHECK_THROWS(regularized_gamma_p(-1.0, 1.0));
}

TEST_CASE("chi-square quantiles against reference values") {
    // classic table values
    CHECK(chi_square_quantile(0.99, 1) == doctest::Approx(6.634896601021).epsilon(1e-9));
    CHECK(chi_square_quantile(0.99, 15) == doctest::Approx(30.57791416689).epsilon(1e-9));
    CHECK(chi_square_quantile(0.99, 63) == doctest::Approx(92.01002425).epsilon(1e-7));
    CHECK(chi_square_quantile(0.95, 10) == doctest::Approx(18.30703805327).epsilon(1e-9));
    // quantile inverts the CDF
    for (int df : {2, 7, 31}) {
        const double q = chi_square_quantile(0.99, df);
        CHECK(regularized_gamma_p(df / 2.0, q / 2.0) == doctest::Approx(0.99).epsilon(1e-10));
    }
}

TEST_CASE("chi-square uniformity test behaves on clean inputs") {
    // perfectly uniform counts
    std::vector<std::uint64_t> even(16, 1000);
    const auto t1 = chi_square_uniformity(even, 0.01);
    CHECK(t1.uniform);
    CHECK(t1.statistic == doctest::Approx(0.0));
    CHECK(t1.df == 15);

    // hash-generated counts pass at the fixed seed
    std::vector<std::uint64_t> hashed(16, 0);
    for (int i = 0; i < 20000; ++i) ++hashed[hash_u64(123, i) % 16];
    CHECK(chi_square_uniformity(hashed, 0.01).uniform);

    // a heavily skewed histogram fails
    std::vector<std::uint64_t> skew(16, 100);
    skew[3] = 400;
    CHECK_FALSE(chi_square_uniformity(skew, 0.01).uniform);
}
