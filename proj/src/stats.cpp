#include "wtfb/stats.hpp"

#include <cmath>

#include "wtfb/errors.hpp"

namespace wtfb {

namespace {

// series expansion, converges fast for x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), best for x >= a+1
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw validation_error("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi_square_quantile(double prob, int df) {
    if (!(prob > 0.0 && prob < 1.0) || df < 1)
        throw validation_error("chi_square_quantile: bad arguments");
    const double a = 0.5 * df;
    auto cdf = [a](double x) { return regularized_gamma_p(a, 0.5 * x); };
    double lo = 0.0;
    double hi = df + 40.0 * std::sqrt(2.0 * df) + 40.0;
    while (cdf(hi) < prob) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < prob)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ChiSquareTest chi_square_uniformity(std::span<const std::uint64_t> counts, double significance) {
    if (counts.size() < 2) throw validation_error("chi_square_uniformity: need at least 2 cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw validation_error("chi_square_uniformity: empty histogram");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    const int df = static_cast<int>(counts.size()) - 1;
    const double crit = chi_square_quantile(1.0 - significance, df);
    return ChiSquareTest{stat, crit, df, stat <= crit};
}

} // namespace wtfb
