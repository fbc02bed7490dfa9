#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hornets/event_engine.hpp"
#include "hornets/rational.hpp"

namespace hornets {

// Rate configuration. By default event rates come from the product rule
// over the system transition and all synchronised object transitions; a
// model may instead pin explicit per-event rates, in which case every
// enabled event must match an entry.
struct StochasticOptions {
    double pseudoTransitionRate = 1.0; // system-side rate of object-autonomous events

    struct EventRateKey {
        Symbol sysTransition; // empty symbol = object-autonomous event
        std::vector<std::pair<Symbol, std::uint64_t>> objTransitions; // sorted

        auto operator<=>(const EventRateKey&) const = default;
    };
    std::map<EventRateKey, double> explicitRates;

    static EventRateKey keyFor(const Event& ev);
};

// Product rule: rate of the system transition times the rates of all
// synchronised object transitions, with multiplicity exponents. Rates of a
// net-token are its own, so equal transitions in different tokens differ.
Rat eventRateProduct(const SystemNet& sys, const Event& ev, const StochasticOptions& opt);

// Product rule or explicit table, per the options.
Rat eventRate(const SystemNet& sys, const Event& ev, const StochasticOptions& opt);

struct EventProbability {
    Event event;
    std::vector<Mode> modes;
    Rat rate;
    Rat probability;
};

// Normalises enabled-event rates at mu. Empty result iff mu is a deadlock;
// otherwise the probabilities sum to exactly 1.
std::vector<EventProbability> firingProbabilities(const EventEngine& engine,
                                                  const NestedMarking& mu,
                                                  const StochasticOptions& opt);

// ---------------------------------------------------------------------------
// Reachability graph with edge probabilities: the induced discrete Markov
// chain. State ids are canonical (sorted by state encoding), so the result
// is independent of exploration order.
struct Dmc {
    struct Edge {
        std::size_t from;
        Event event;
        Mode mode;
        std::size_t to;
        Rat prob;
    };

    std::vector<NestedMarking> states;
    std::vector<std::string> stateKeys;
    std::size_t initial = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> outDegree;
    bool truncated = false;
    std::string truncationNote;

    bool isDeadlock(std::size_t state) const { return outDegree[state] == 0; }

    std::string toDot(const NameTable* names = nullptr) const;
    std::string toJson(const NameTable* names = nullptr) const;
};

struct DmcLimits {
    std::size_t maxStates = 100000;
    std::size_t maxDepth = 1000000;
    bool parallel = false;
    unsigned threads = 0; // 0 = hardware concurrency
};

Dmc buildDmc(const EventEngine& engine, const NestedMarking& mu0, const StochasticOptions& opt,
             const DmcLimits& limits = {});

// Distribution after `steps` transitions from the initial point mass.
// Deadlock states are absorbing. Refuses truncated chains unless allowed.
std::vector<double> transientDistribution(const Dmc& dmc, std::size_t steps,
                                          bool allowTruncated = false);

// ---------------------------------------------------------------------------
// Seeded simulation.
struct TraceStep {
    std::size_t step = 0;
    Event event;
    Mode mode;
    Rat eventProb;
    Rat edgeProb; // event probability split uniformly over its modes
    std::string observed;
    NestedMarking after;
};

struct SimulateHooks {
    // Called once per fired step; the return value lands in the trace's
    // observed column.
    std::function<std::string(const NestedMarking& before,
                              const std::vector<EventProbability>& enabled, const Event& chosen,
                              const Mode& mode, const NestedMarking& after)>
        observe;
};

struct Trace {
    std::uint64_t seed = 0;
    std::vector<TraceStep> steps;
    bool deadlocked = false;

    std::string toCsv(const NameTable* names = nullptr, bool rationalProbabilities = true) const;
};

// Deterministic given the seed: each step samples an event proportionally
// to its rate, then one of its modes uniformly, then fires.
Trace simulate(const EventEngine& engine, const NestedMarking& mu0, std::uint64_t seed,
               std::size_t maxSteps, const StochasticOptions& opt,
               const SimulateHooks* hooks = nullptr);

std::string csvQuote(const std::string& field);
std::string formatProbability(const Rat& p, bool rational);

} // namespace hornets
