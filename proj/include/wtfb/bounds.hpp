#pragma once

#include <functional>
#include <string>

#include "wtfb/channel.hpp"
#include "wtfb/info.hpp"
#include "wtfb/optimizer.hpp"

namespace wtfb {

// Auxiliary randomization of the feedback coding schemes: a message variable
// U with channel P(x|u) and a help variable V drawn from P(v|u,y1). The
// cardinality caps |U| <= |X|+1 and |V| <= |X|+2 are enforced here; smaller
// effective alphabets are reached through zero-probability symbols.
struct AuxiliarySystem {
    int u_size;
    int v_size;
    Pmf pu;
    ConditionalPmf px_given_u;
    ConditionalPmf pv_given_uy1;

    AuxiliarySystem(int x_size, int y1_size, Pmf pu_, ConditionalPmf px_given_u_,
                    ConditionalPmf pv_given_uy1_);

    // U uniform over X with the identity channel and constant V.
    static AuxiliarySystem identity_on_x(const WiretapChannel& ch);

    JointPmf joint(const WiretapChannel& ch) const; // P(u,v,x,y1,y2)
};

enum class BoundKind {
    cs_general,
    r_s_ahlswede_cai,
    r_star_s,
    c_f_out,
    r_double_star,
    c_f_star_out,
    r_non
};

const char* to_string(BoundKind k);

struct BoundSettings {
    AscentSettings ascent;
    int u_size = 0; // 0 = cap |X|+1
    int v_size = 0; // 0 = cap |X|+2 (only used by the V-bearing bounds)
};

struct BoundResult {
    double value = 0.0;
    BoundKind kind{};
    AuxiliarySystem argmax;
    OptimizerTrace trace;
};

// Axis order of the assembled joint everywhere below: (u, v, x, y1, y2).

// Generic maximizer over the full auxiliary space; realizes every
// "max over P(.)" below and is exposed for tests and extensions.
BoundResult optimize(const std::function<double(const AuxiliarySystem&, const WiretapChannel&)>& objective,
                     const WiretapChannel& ch, const BoundSettings& settings = {},
                     BoundKind kind = BoundKind::cs_general);

// No-feedback secrecy capacity: max [I(Y1;U) - I(Y2;U)]^+ over P(u), P(x|u).
BoundResult cs_general(const WiretapChannel& ch, const BoundSettings& settings = {});

// Secret-key feedback lower bound:
//   max min{ [I(Y1;U) - I(Y2;U)]^+ + H(Y1|Y2,U), I(Y1;U) }.
BoundResult r_s_ahlswede_cai(const WiretapChannel& ch, const BoundSettings& settings = {});

// Feedback lower bound with Wyner-Ziv help information V:
//   max min{ [I(Y1,V;U) - I(Y2;U)]^+ + H(Y1|Y2,U), I(Y1;U) }
// over P(u), P(x|u), P(v|u,y1).
BoundResult r_star_s(const WiretapChannel& ch, const BoundSettings& settings = {});

// Feedback upper bound: max over joint P(u,x) of min{ H(Y1|Y2), I(Y1;U) }.
BoundResult c_f_out(const WiretapChannel& ch, const BoundSettings& settings = {});

// Specializations for channels with Y1 -> X -> Y2 (conditionally independent
// outputs). They require structure non_degraded and pin U = X.
BoundResult r_double_star_nondegraded(const WiretapChannel& ch, const BoundSettings& settings = {});
BoundResult c_f_star_out_nondegraded(const WiretapChannel& ch, const BoundSettings& settings = {});
BoundResult r_non_ahlswede_cai_nondegraded(const WiretapChannel& ch, const BoundSettings& settings = {});

// Warm-start chained evaluation of the four general bounds: each bound's
// search is additionally seeded with the argmax of the bound below it, so the
// reported values respect the achievable orderings up to ascent noise.
struct GeneralBounds {
    BoundResult cs, rs, rstar, cfout;
};
GeneralBounds compute_general_bounds(const WiretapChannel& ch, const BoundSettings& settings = {});

// Rate identity of the feedback scheme for a plain channel P(y|x): returns
// {I(Y,V;X) - I(V;X|Y), I(X;Y)}; the two coincide for every auxiliary V.
struct RateIdentity {
    double via_help_information;
    double direct;
};
RateIdentity dmc_feedback_rate_identity(const Pmf& px, const ConditionalPmf& py_given_x,
                                        const ConditionalPmf& pv_given_xy);

} // namespace wtfb
