#pragma once

#include <span>

#include "wtfb/pmf.hpp"

namespace wtfb {

// Shannon information kernels. Everything is in bits (log base 2) and the
// 0*log(0) limit is handled by branching, never by flooring probabilities.

double entropy(const Pmf& p);
double entropy(const JointPmf& j);
double entropy_of(const JointPmf& j, std::span<const int> axes);

// h(u) = -u log2 u - (1-u) log2 (1-u); domain error outside [0,1].
double binary_entropy(double u);

// u*v = u(1-v) + (1-u)v, the crossover of two chained binary symmetric
// channels; domain error outside [0,1]^2.
double star(double u, double v);

// I(A;B) = H(A) + H(B) - H(A,B) over disjoint axis groups of a joint table.
double mutual_information(const JointPmf& j, std::span<const int> group_a,
                          std::span<const int> group_b);

// H(target | given) = H(target,given) - H(given); `given` may be empty.
double conditional_entropy(const JointPmf& j, std::span<const int> target,
                           std::span<const int> given);

// I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C).
double conditional_mutual_information(const JointPmf& j, std::span<const int> group_a,
                                      std::span<const int> group_b,
                                      std::span<const int> given);

// Joint law P(u,v,x,y1,y2) = P(u) P(x|u) P(y1,y2|x) P(v|u,y1).
// `channel` maps x to the flattened pair index y1*y2_size + y2; y1_size is
// read off pv_given_uy1 and y2_size deduced from the channel output size.
JointPmf assemble_joint(const Pmf& pu, const ConditionalPmf& px_given_u,
                        const ConditionalPmf& channel, const ConditionalPmf& pv_given_uy1);

// Same law with V marginalized away by construction: P(u,x,y1,y2).
JointPmf assemble_joint_uxy(const Pmf& pu, const ConditionalPmf& px_given_u,
                            const ConditionalPmf& channel, int y1_size);

// P(x,y,v) = P(x) P(y|x) P(v|x,y), the single-channel feedback law.
JointPmf assemble_joint_xyv(const Pmf& px, const ConditionalPmf& py_given_x,
                            const ConditionalPmf& pv_given_xy);

} // namespace wtfb
