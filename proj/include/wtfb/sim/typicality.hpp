#pragma once

#include <span>
#include <vector>

#include "wtfb/pmf.hpp"

namespace wtfb::sim {

// Strong (frequency) typicality: a tuple sequence is epsilon-typical w.r.t. a
// reference distribution when every cell's empirical frequency deviates from
// the reference probability by at most epsilon.
//
// The window is precomputed as integer count bounds so candidate scans can
// prune as soon as a running count exceeds its ceiling.
class TypicalityWindow {
public:
    TypicalityWindow(std::span<const double> cell_probs, int n, double epsilon);

    int n() const { return n_; }
    int cells() const { return static_cast<int>(hi_.size()); }
    int ceiling(int cell) const { return hi_[static_cast<std::size_t>(cell)]; }
    int floor_count(int cell) const { return lo_[static_cast<std::size_t>(cell)]; }

    bool check(std::span<const int> counts) const {
        for (std::size_t c = 0; c < hi_.size(); ++c)
            if (counts[c] < lo_[c] || counts[c] > hi_[c]) return false;
        return true;
    }

private:
    std::vector<int> lo_, hi_;
    int n_;
};

// epsilon-typicality of one sequence against a Pmf
bool typical(std::span<const int> seq, const Pmf& ref, double epsilon);

// joint epsilon-typicality of aligned sequences, one per axis of `ref`
bool typical_joint(std::span<const std::vector<int>> seqs, const JointPmf& ref, double epsilon);

} // namespace wtfb::sim
