#pragma once

#include <cstdint>
#include <span>

namespace wtfb {

// Regularized lower incomplete gamma P(a,x); series + continued fraction.
double regularized_gamma_p(double a, double x);

// Quantile of the chi-square distribution with df degrees of freedom.
double chi_square_quantile(double prob, int df);

struct ChiSquareTest {
    double statistic;
    double critical; // quantile at 1 - significance
    int df;
    bool uniform;    // statistic <= critical
};

// Pearson test of `counts` against the uniform distribution.
ChiSquareTest chi_square_uniformity(std::span<const std::uint64_t> counts, double significance);

} // namespace wtfb
