#pragma once

#include "hornets/system_net.hpp"

namespace hornets {

struct MapeConfig {
    double gamma = 0.5; // planning-horizon discount, in [0, 1]

    // Default counting charges only structural operators (those that change
    // net topology); rate arithmetic is free. Strict mode charges every
    // operator application plus guard arithmetic.
    bool strictCounting = false;
};

// Operator applications in a term, all operators counted.
int termOpCount(const NetTerm& term);

// Operator count of a system transition: guard plus all pre and post arc
// inscriptions, with multiset multiplicities.
int transformationComplexity(const SystemNet& sys, Symbol t, const OpRegistry& ops,
                             const MapeConfig& cfg = {});

// gamma ^ TC(t). Errors when gamma = 0 meets TC > 0 (rates must stay positive).
double mapeRate(const SystemNet& sys, Symbol t, const OpRegistry& ops, const MapeConfig& cfg);

// Copy of the system net with every transition rated by mapeRate.
SystemNet applyMapeRates(const SystemNet& sys, const OpRegistry& ops, const MapeConfig& cfg);

} // namespace hornets
