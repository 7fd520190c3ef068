#include <doctest.h>

#include "wtfb/rng.hpp"
#include "wtfb/sim/typicality.hpp"

using namespace wtfb;
using namespace wtfb::sim;

TEST_CASE("typicality window bounds") {
    const std::vector<double> p{0.5, 0.5};
    TypicalityWindow w(p, 10, 0.1);
    CHECK(w.floor_count(0) == 4);
    CHECK(w.ceiling(0) == 6);
    CHECK_THROWS(TypicalityWindow(p, 0, 0.1));
    CHECK_THROWS(TypicalityWindow(p, 10, 0.0));
}

TEST_CASE("exact-frequency sequence is typical") {
    const Pmf ref({0.25, 0.75});
    std::vector<int> seq;
    for (int i = 0; i < 25; ++i) seq.push_back(0);
    for (int i = 0; i < 75; ++i) seq.push_back(1);
    CHECK(typical(seq, ref, 0.01));
}

TEST_CASE("constant sequence vs uniform reference fails") {
    const Pmf ref = Pmf::uniform(2);
    const std::vector<int> seq(50, 0); // frequency 1.0 vs 0.5
    CHECK_FALSE(typical(seq, ref, 0.1));
}

TEST_CASE("iid draws are typical with high probability") {
    const Pmf ref({0.3, 0.7});
    const int n = 1000, trials = 400;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> seq(n);
        for (int i = 0; i < n; ++i)
            seq[static_cast<std::size_t>(i)] =
                sample_symbol(ref.probs(), to_unit(hash_u64(555, t, i)));
        if (typical(seq, ref, 0.05)) ++hits;
    }
    // binomial tail: P(|freq - 0.3| > 0.05) ~ 2 exp(-2 n eps^2) ~ 0.014
    CHECK(hits >= trials * 99 / 100);
}

TEST_CASE("joint typicality over aligned sequences") {
    std::vector<double> t{0.45, 0.05, 0.05, 0.45}; // BSC(0.1), uniform input
    const JointPmf ref({2, 2}, std::move(t));
    const int n = 500;
    std::vector<std::vector<int>> seqs(2, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        const int pair = sample_symbol(ref.probs(), to_unit(hash_u64(777, i)));
        seqs[0][static_cast<std::size_t>(i)] = pair / 2;
        seqs[1][static_cast<std::size_t>(i)] = pair % 2;
    }
    CHECK(typical_joint(seqs, ref, 0.08));
    // shuffling one sequence destroys the joint type
    std::vector<int> shuffled = seqs[1];
    SplitMix rng(3);
    for (std::size_t k = shuffled.size(); k > 1; --k)
        std::swap(shuffled[k - 1], shuffled[rng.next_below(k)]);
    std::vector<std::vector<int>> broken{seqs[0], shuffled};
    // independent pair frequencies ~0.25 per cell vs 0.45/0.05 reference
    CHECK_FALSE(typical_joint(broken, ref, 0.08));

    CHECK_THROWS(typical_joint(std::vector<std::vector<int>>{seqs[0]}, ref, 0.08));
}

TEST_CASE("alphabet mismatch raises") {
    const Pmf ref = Pmf::uniform(2);
    const std::vector<int> seq{0, 1, 2};
    CHECK_THROWS(typical(seq, ref, 0.1));
}
