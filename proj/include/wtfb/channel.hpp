#pragma once

#include <optional>
#include <string>

#include "wtfb/pmf.hpp"

namespace wtfb {

enum class ChannelStructure { general, physically_degraded, non_degraded };

const char* to_string(ChannelStructure s);
ChannelStructure structure_from_string(const std::string& s);

// Crossover probabilities of the two-output binary model Y1 = X ^ Z1,
// Y2 = X ^ Z2 with independent Bernoulli noises. Both must be < 0.5.
struct BinaryWiretapParams {
    double p1; // main channel crossover
    double p2; // wiretap channel crossover
    BinaryWiretapParams(double p1_, double p2_);
};

// Discrete memoryless broadcast law P(y1,y2|x) plus structure metadata.
// `law` maps x to the flattened output pair y1*y2_size + y2.
class WiretapChannel {
public:
    WiretapChannel(int x_size, int y1_size, int y2_size, ConditionalPmf law,
                   ChannelStructure structure);

    int x_size() const { return nx_; }
    int y1_size() const { return ny1_; }
    int y2_size() const { return ny2_; }
    ChannelStructure structure() const { return structure_; }
    const ConditionalPmf& law() const { return law_; }

    double prob(int x, int y1, int y2) const {
        return law_.slice(static_cast<std::size_t>(x))[static_cast<std::size_t>(y1) * ny2_ + y2];
    }

    ConditionalPmf main_marginal() const;    // P(y1|x)
    ConditionalPmf wiretap_marginal() const; // P(y2|x)

private:
    int nx_, ny1_, ny2_;
    ConditionalPmf law_;
    ChannelStructure structure_;
};

WiretapChannel make_binary_channel(const BinaryWiretapParams& params);

// P(y1,y2|x) = P(y1|x) * D(y2|y1); tagged physically_degraded.
WiretapChannel make_degraded_channel(const ConditionalPmf& main, const ConditionalPmf& degrader);

// Arbitrary law with a caller-chosen tag; the tag's factorization invariant is
// verified and rejected if it does not hold.
WiretapChannel make_channel(int x_size, int y1_size, int y2_size, std::vector<double> law,
                            ChannelStructure structure = ChannelStructure::general);

struct StructureReport {
    bool factorizes;               // P(y1,y2|x) = P(y1|x)P(y2|x) within 1e-9
    double factorization_residual; // max |joint - product| over all cells
    enum class Degradable { yes, no, unchecked } degradable;
    double degrading_residual;     // max marginal mismatch of the best degrading matrix
    ChannelStructure suggested;
    std::string describe() const;
};

// Checks the two structural properties directly from the law. The degrading
// matrix search is a dense linear feasibility solve, run only for alphabets
// up to 4; larger channels report `unchecked`.
StructureReport validate_structure(const WiretapChannel& ch);

// Channel file I/O. JSON object with x_size, y1_size, y2_size, law as a
// nested [x][y1][y2] array, and an optional "structure" string. Probabilities
// are written with 17 significant digits so a save/load round trip is exact.
WiretapChannel load_channel(const std::string& path);
WiretapChannel parse_channel_json(const std::string& text, const std::string& origin);
void save_channel(const WiretapChannel& ch, const std::string& path);
std::string channel_to_json(const WiretapChannel& ch);

// Least-infeasibility of D(y2|y1) rows mapping `main` onto `wiretap`:
// min over stochastic D of max_{x,y2} |sum_y1 P(y1|x) D(y2|y1) - P(y2|x)|.
// Exposed for the structure check and its tests.
double degrading_matrix_residual(const ConditionalPmf& main, const ConditionalPmf& wiretap);

} // namespace wtfb
