#pragma once

#include <array>
#include <vector>

#include "wtfb/channel.hpp"
#include "wtfb/optimizer.hpp"

namespace wtfb {

// Closed-form bound evaluators for the binary model Y1 = X^Z1, Y2 = X^Z2.
// The auxiliary parameterization is alpha = P(x=0) and gamma_k = P(v=0|x,y1)
// in the fixed order (x=0,y1=0), (x=0,y1=1), (x=1,y1=0), (x=1,y1=1).

struct BinaryAuxParams {
    double alpha;
    std::array<double, 4> gamma;
    BinaryAuxParams(double a, std::array<double, 4> g);
};

// Secrecy capacity without feedback: [h(p2) - h(p1)]^+.
double cb_s(const BinaryWiretapParams& p);

// Secret-key feedback rate, simplified closed form at alpha = 1/2:
//   min{ [h(p2) - h(p1)]^+ + h(p1), 1 - h(p1) }.
double cb_in(const BinaryWiretapParams& p);

// The original alpha-parameterized objective behind cb_in and its numeric
// maximization; kept as a cross-check of the alpha = 1/2 simplification.
double cb_in_objective(const BinaryWiretapParams& p, double alpha);
double cb_in_alpha_max(const BinaryWiretapParams& p);

// Eight-term expansion of I(X;Y1,V) for the binary model. Zero coefficients
// suppress their log terms; a vanishing denominator only occurs under a
// vanishing coefficient.
double expression_A(double p1, const BinaryAuxParams& params);

// H(Y1|Y2) of the binary pair law at input bias alpha.
double expression_B(const BinaryWiretapParams& p, double alpha);

// Objective of the help-information feedback rate:
//   min{ [A - h(a*p2) + h(p2)]^+ + h(p1), h(a*p1) - h(p1) }.
double cb_in_new_objective(const BinaryWiretapParams& p, const BinaryAuxParams& params);

struct BinaryOptSettings {
    int grid_resolution = 9; // per coordinate; the grid carries the {0,1} corners
    int restarts = 16;
    std::uint64_t seed = 42;
    ExecMode exec = ExecMode::openmp;
};

struct BinaryBoundResult {
    double value;
    BinaryAuxParams argmax;
    OptimizerTrace trace;
};

// max over (alpha, gamma1..4) of cb_in_new_objective.
BinaryBoundResult cb_in_new(const BinaryWiretapParams& p, const BinaryOptSettings& s = {});

// max over alpha of min{ B, h(a*p1) - h(p1) }; grid plus golden-section.
BinaryBoundResult cb_out(const BinaryWiretapParams& p, const BinaryOptSettings& s = {});

struct SweepRow {
    double p2;
    double cb_s;
    double cb_in;
    double cb_in_new;
    double cb_out;
    double alpha_star;             // argmax of cb_in_new
    std::array<double, 4> gamma_star;
};

// One row per p2 value; rows are computed in parallel but the output order
// and contents depend only on the settings seed.
std::vector<SweepRow> sweep(double p1, const std::vector<double>& p2_grid,
                            const BinaryOptSettings& s = {});

} // namespace wtfb
