#pragma once

#include <array>
#include <memory>
#include <utility>

#include "hornets/mape.hpp"
#include "hornets/stochastic.hpp"

namespace hornets {

// Parameters of the built-in battle-of-sexes adaptation scenario: two
// agents repeatedly pick between their a- and b-actions, payoffs feed back
// into the branch rates, and a dominant agent-0 option is eventually frozen
// structurally.
struct BosParams {
    double a0Rate = 70.0;
    double b0Rate = 30.0;
    double a1Rate = 55.0;
    double b1Rate = 45.0;

    // payoff[i][j] = rewards (agent0, agent1) when agent0 plays i (0 = a0,
    // 1 = b0) and agent1 plays j (0 = a1, 1 = b1).
    std::array<std::array<std::pair<double, double>, 2>, 2> payoff = {{
        {{{3.0, 1.0}, {0.0, 0.0}}},
        {{{0.0, 0.0}, {1.0, 3.0}}},
    }};

    double threshold = 0.8; // dominance level that allows structural adaptation
    double gamma = 0.5;     // mape discount for the system-net rates
    std::size_t horizon = 200;

    void validate() const;
};

struct BosModel {
    std::map<Symbol, Kind> kinds;
    SystemNet system; // validated, mape-rated
    NestedMarking initial;
    std::shared_ptr<NameTable> names;
    StochasticOptions stoch;
};

// The game workflow net-token (a0 xor b0) || (a1 xor b1) with a replay
// transition, plus the system net: four play transitions synchronising with
// the chosen branch pair and rewarding it via rate updates, and two
// threshold-guarded transitions that fix a dominant agent-0 choice.
BosModel buildBosModel(const BosParams& params = {});

enum class BosStructure { Xor, FixedA0, FixedB0 };

struct BosSample {
    double prA0 = 0.0;
    double prA1 = 0.0;
    BosStructure structure = BosStructure::Xor;
    bool adaptA0Enabled = false;
    bool adaptB0Enabled = false;
};

// Reads the game net-token out of a marking. Throws ModelError if the
// marking does not hold exactly one token on the game place.
BosSample bosObserve(const NestedMarking& mu);

struct BosRun {
    BosParams params;
    Trace trace;
    std::vector<BosSample> samples; // samples[0] observes the initial marking
    std::string toCsv() const;      // step,prA0,prA1,structure
};

BosRun runBos(const BosParams& params, std::uint64_t seed);

// Transition and place names of the generated model, for observers and tests.
namespace bos_names {
inline const char* kGamePlace = "game";
inline const char* kActionA0 = "a0";
inline const char* kActionB0 = "b0";
inline const char* kActionA1 = "a1";
inline const char* kActionB1 = "b1";
inline const char* kReplay = "again";
inline const char* kPlay[2][2] = {{"play_a0_a1", "play_a0_b1"}, {"play_b0_a1", "play_b0_b1"}};
inline const char* kAdaptA0 = "adapt_a0";
inline const char* kAdaptB0 = "adapt_b0";
} // namespace bos_names

} // namespace hornets
