#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wtfb/errors.hpp"

namespace wtfb {

inline constexpr double kPmfSumTol = 1e-9;       // accepted drift of a probability vector sum
inline constexpr std::size_t kDenseCap = 10'000'000; // max entries of a dense joint table

// Probability mass function over a finite alphabet. Entries are validated to
// be nonnegative and to sum to 1 within kPmfSumTol, then rescaled so the sum
// is exactly 1 in floating point. Immutable after construction.
class Pmf {
public:
    explicit Pmf(std::vector<double> probs, const char* what = "pmf");

    static Pmf uniform(int n);
    static Pmf point_mass(int n, int at);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    std::span<const double> probs() const { return p_; }

private:
    std::vector<double> p_;
};

// Dense joint distribution over several finite axes, row-major layout.
class JointPmf {
public:
    JointPmf(std::vector<int> axis_sizes, std::vector<double> probs,
             const char* what = "joint pmf");

    int rank() const { return static_cast<int>(sizes_.size()); }
    int axis_size(int axis) const { return sizes_[static_cast<std::size_t>(axis)]; }
    const std::vector<int>& axis_sizes() const { return sizes_; }
    std::size_t table_size() const { return p_.size(); }
    std::span<const double> probs() const { return p_; }

    double at(std::span<const int> idx) const { return p_[flat_index(idx)]; }
    std::size_t flat_index(std::span<const int> idx) const;

    // Sum out every axis not in `axes`; resulting axis order follows `axes`.
    JointPmf marginal(std::span<const int> axes) const;
    Pmf marginal_pmf(int axis) const;

private:
    struct unchecked_tag {};
    JointPmf(std::vector<int> sizes, std::vector<double> probs, unchecked_tag);

    std::vector<int> sizes_;
    std::vector<double> p_;
    std::vector<std::size_t> strides_;

    friend JointPmf joint_from_factors_unchecked(std::vector<int>, std::vector<double>);
};

// Escape hatch for internal factor products that are normalized by
// construction; still checks the total within kPmfSumTol.
JointPmf joint_from_factors_unchecked(std::vector<int> sizes, std::vector<double> probs);

// Conditional distribution table P(output | inputs...). For every fixed input
// tuple the output slice is a valid Pmf. Stored row-major (inputs..., output).
class ConditionalPmf {
public:
    ConditionalPmf(std::vector<int> input_sizes, int output_size,
                   std::vector<double> table, const char* what = "conditional pmf");

    const std::vector<int>& input_sizes() const { return in_sizes_; }
    int output_size() const { return out_size_; }
    std::size_t input_count() const { return n_inputs_; }
    std::span<const double> table() const { return t_; }

    // Slice for one flat input index (inputs enumerated row-major).
    std::span<const double> slice(std::size_t flat_input) const {
        return {t_.data() + flat_input * static_cast<std::size_t>(out_size_),
                static_cast<std::size_t>(out_size_)};
    }
    double at(std::span<const int> inputs, int output) const;

    static ConditionalPmf deterministic(std::vector<int> input_sizes, int output_size,
                                        std::span<const int> output_per_input);

private:
    std::vector<int> in_sizes_;
    int out_size_;
    std::size_t n_inputs_; // product of input sizes
    std::vector<double> t_;
};

} // namespace wtfb
