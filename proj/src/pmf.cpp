#include "wtfb/pmf.hpp"

#include <cmath>
#include <string>

namespace wtfb {

namespace {

void check_entries(std::span<const double> v, const char* what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = v[i];
        if (!(x >= 0.0) || std::isnan(x))
            throw validation_error(std::string(what) + ": entry " + std::to_string(i) +
                                   " is negative or not a number (" + std::to_string(x) + ")");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kPmfSumTol)
        throw validation_error(std::string(what) + ": entries sum to " + std::to_string(sum) +
                               ", expected 1 within 1e-9");
}

void rescale(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    // skip near-exact sums so reloading already-normalized tables is a no-op
    if (std::abs(sum - 1.0) > 1e-14 && sum > 0.0) {
        for (double& x : v) x /= sum;
    }
}

} // namespace

Pmf::Pmf(std::vector<double> probs, const char* what) : p_(std::move(probs)) {
    if (p_.empty()) throw validation_error(std::string(what) + ": empty support");
    check_entries(p_, what);
    rescale(p_);
}

Pmf Pmf::uniform(int n) {
    if (n <= 0) throw validation_error("pmf: support size must be positive");
    return Pmf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

Pmf Pmf::point_mass(int n, int at) {
    if (n <= 0 || at < 0 || at >= n) throw validation_error("pmf: point mass index out of range");
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(at)] = 1.0;
    return Pmf(std::move(v));
}

JointPmf::JointPmf(std::vector<int> axis_sizes, std::vector<double> probs, const char* what)
    : sizes_(std::move(axis_sizes)), p_(std::move(probs)) {
    if (sizes_.empty()) throw validation_error(std::string(what) + ": no axes");
    std::size_t total = 1;
    for (int s : sizes_) {
        if (s <= 0) throw validation_error(std::string(what) + ": axis size must be positive");
        total *= static_cast<std::size_t>(s);
        if (total > kDenseCap)
            throw validation_error(std::string(what) + ": dense table exceeds cap of 1e7 entries");
    }
    if (p_.size() != total)
        throw validation_error(std::string(what) + ": table has " + std::to_string(p_.size()) +
                               " entries, expected " + std::to_string(total));
    check_entries(p_, what);
    rescale(p_);
    strides_.assign(sizes_.size(), 1);
    for (int a = static_cast<int>(sizes_.size()) - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * static_cast<std::size_t>(sizes_[a + 1]);
}

JointPmf::JointPmf(std::vector<int> sizes, std::vector<double> probs, unchecked_tag)
    : sizes_(std::move(sizes)), p_(std::move(probs)) {
    strides_.assign(sizes_.size(), 1);
    for (int a = static_cast<int>(sizes_.size()) - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * static_cast<std::size_t>(sizes_[a + 1]);
}

JointPmf joint_from_factors_unchecked(std::vector<int> sizes, std::vector<double> probs) {
    double sum = 0.0;
    for (double x : probs) sum += x;
    if (std::abs(sum - 1.0) > kPmfSumTol)
        throw validation_error("assembled joint does not sum to 1 within 1e-9 (got " +
                               std::to_string(sum) + ")");
    return JointPmf(std::move(sizes), std::move(probs), JointPmf::unchecked_tag{});
}

std::size_t JointPmf::flat_index(std::span<const int> idx) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < sizes_.size(); ++a)
        f += strides_[a] * static_cast<std::size_t>(idx[a]);
    return f;
}

JointPmf JointPmf::marginal(std::span<const int> axes) const {
    for (int a : axes)
        if (a < 0 || a >= rank()) throw validation_error("marginal: axis out of range");
    std::vector<int> out_sizes;
    out_sizes.reserve(axes.size());
    for (int a : axes) out_sizes.push_back(sizes_[static_cast<std::size_t>(a)]);
    std::size_t out_total = 1;
    for (int s : out_sizes) out_total *= static_cast<std::size_t>(s);
    std::vector<double> out(out_total, 0.0);

    std::vector<int> idx(sizes_.size(), 0);
    for (std::size_t f = 0; f < p_.size(); ++f) {
        std::size_t o = 0;
        for (int a : axes) o = o * static_cast<std::size_t>(sizes_[static_cast<std::size_t>(a)]) +
                               static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
        out[o] += p_[f];
        for (int a = static_cast<int>(sizes_.size()) - 1; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < sizes_[static_cast<std::size_t>(a)]) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
    }
    return JointPmf(std::move(out_sizes), std::move(out), unchecked_tag{});
}

Pmf JointPmf::marginal_pmf(int axis) const {
    const int a[] = {axis};
    JointPmf m = marginal(a);
    return Pmf(std::vector<double>(m.probs().begin(), m.probs().end()));
}

ConditionalPmf::ConditionalPmf(std::vector<int> input_sizes, int output_size,
                               std::vector<double> table, const char* what)
    : in_sizes_(std::move(input_sizes)), out_size_(output_size), t_(std::move(table)) {
    if (out_size_ <= 0) throw validation_error(std::string(what) + ": output size must be positive");
    n_inputs_ = 1;
    for (int s : in_sizes_) {
        if (s <= 0) throw validation_error(std::string(what) + ": input size must be positive");
        n_inputs_ *= static_cast<std::size_t>(s);
    }
    if (t_.size() != n_inputs_ * static_cast<std::size_t>(out_size_))
        throw validation_error(std::string(what) + ": table has " + std::to_string(t_.size()) +
                               " entries, expected " +
                               std::to_string(n_inputs_ * static_cast<std::size_t>(out_size_)));
    for (std::size_t i = 0; i < n_inputs_; ++i) {
        auto s = slice(i);
        double sum = 0.0;
        for (std::size_t o = 0; o < s.size(); ++o) {
            if (!(s[o] >= 0.0) || std::isnan(s[o]))
                throw validation_error(std::string(what) + ": slice " + std::to_string(i) +
                                       " has a negative or non-numeric entry");
            sum += s[o];
        }
        if (std::abs(sum - 1.0) > kPmfSumTol)
            throw validation_error(std::string(what) + ": slice " + std::to_string(i) +
                                   " sums to " + std::to_string(sum) + ", expected 1 within 1e-9");
        if (std::abs(sum - 1.0) > 1e-14 && sum > 0.0) {
            double* base = t_.data() + i * static_cast<std::size_t>(out_size_);
            for (int o = 0; o < out_size_; ++o) base[o] /= sum;
        }
    }
}

double ConditionalPmf::at(std::span<const int> inputs, int output) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < in_sizes_.size(); ++a)
        f = f * static_cast<std::size_t>(in_sizes_[a]) + static_cast<std::size_t>(inputs[a]);
    return t_[f * static_cast<std::size_t>(out_size_) + static_cast<std::size_t>(output)];
}

ConditionalPmf ConditionalPmf::deterministic(std::vector<int> input_sizes, int output_size,
                                             std::span<const int> output_per_input) {
    std::size_t n = 1;
    for (int s : input_sizes) n *= static_cast<std::size_t>(s);
    std::vector<double> t(n * static_cast<std::size_t>(output_size), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        t[i * static_cast<std::size_t>(output_size) + static_cast<std::size_t>(output_per_input[i])] = 1.0;
    return ConditionalPmf(std::move(input_sizes), output_size, std::move(t));
}

} // namespace wtfb
