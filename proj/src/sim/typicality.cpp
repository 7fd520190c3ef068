#include "wtfb/sim/typicality.hpp"

#include <cmath>

namespace wtfb::sim {

TypicalityWindow::TypicalityWindow(std::span<const double> cell_probs, int n, double epsilon)
    : n_(n) {
    if (n <= 0) throw validation_error("typicality: sequence length must be positive");
    if (!(epsilon > 0.0)) throw validation_error("typicality: epsilon must be positive");
    lo_.resize(cell_probs.size());
    hi_.resize(cell_probs.size());
    for (std::size_t c = 0; c < cell_probs.size(); ++c) {
        const double p = cell_probs[c];
        // |count/n - p| <= eps  <=>  n(p-eps) <= count <= n(p+eps)
        int lo = static_cast<int>(std::ceil(n * (p - epsilon) - 1e-9));
        int hi = static_cast<int>(std::floor(n * (p + epsilon) + 1e-9));
        if (lo < 0) lo = 0;
        if (hi > n) hi = n;
        lo_[c] = lo;
        hi_[c] = hi;
    }
}

bool typical(std::span<const int> seq, const Pmf& ref, double epsilon) {
    if (seq.empty()) throw validation_error("typical: empty sequence");
    const TypicalityWindow w(ref.probs(), static_cast<int>(seq.size()), epsilon);
    std::vector<int> counts(static_cast<std::size_t>(ref.size()), 0);
    for (int s : seq) {
        if (s < 0 || s >= ref.size())
            throw validation_error("typical: symbol outside the reference alphabet");
        ++counts[static_cast<std::size_t>(s)];
    }
    return w.check(counts);
}

bool typical_joint(std::span<const std::vector<int>> seqs, const JointPmf& ref, double epsilon) {
    if (seqs.size() != static_cast<std::size_t>(ref.rank()))
        throw validation_error("typical_joint: need one sequence per axis");
    const std::size_t n = seqs[0].size();
    if (n == 0) throw validation_error("typical_joint: empty sequence");
    for (const auto& s : seqs)
        if (s.size() != n) throw validation_error("typical_joint: sequences must be aligned");

    const TypicalityWindow w(ref.probs(), static_cast<int>(n), epsilon);
    std::vector<int> counts(ref.table_size(), 0);
    std::vector<int> idx(static_cast<std::size_t>(ref.rank()));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t a = 0; a < seqs.size(); ++a) {
            const int s = seqs[a][t];
            if (s < 0 || s >= ref.axis_size(static_cast<int>(a)))
                throw validation_error("typical_joint: symbol outside the reference alphabet");
            idx[a] = s;
        }
        ++counts[ref.flat_index(idx)];
    }
    return w.check(counts);
}

} // namespace wtfb::sim
