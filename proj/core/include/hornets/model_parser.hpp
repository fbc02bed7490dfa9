#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hornets/event_engine.hpp"
#include "hornets/stochastic.hpp"

namespace hornets {

struct ModelOptions {
    double gamma = 0.5;
    double pseudoRate = 1.0;
    std::size_t modeCap = 10000;
    std::size_t maxStates = 100000;
    std::size_t maxDepth = 1000000;
    bool rationalPrint = true;
    std::string modeSplit = "uniform";
};

// One line of the marking section, kept for round-trip printing.
struct MarkingDecl {
    std::uint64_t count = 1;
    Symbol place;
    NetTerm term;
    bool atInit = false; // "{ @init }": one token on the net's source place
    Multiset<Symbol> tokens;
};

// A parsed .hornet model: kinds, object-net constants, the system net, the
// initial nested marking, and analysis options.
struct Model {
    std::map<Symbol, Kind> kinds;
    std::map<Symbol, ObjectNetRef> constants;
    SystemNet system;
    NestedMarking initial;
    std::vector<MarkingDecl> markingDecls;
    ModelOptions options;
    std::map<StochasticOptions::EventRateKey, double> explicitRates;
    std::shared_ptr<NameTable> names = std::make_shared<NameTable>();

    StochasticOptions stoch() const {
        StochasticOptions s;
        s.pseudoTransitionRate = options.pseudoRate;
        s.explicitRates = explicitRates;
        return s;
    }

    EngineLimits engineLimits() const { return EngineLimits{options.modeCap}; }
    DmcLimits dmcLimits() const {
        DmcLimits l;
        l.maxStates = options.maxStates;
        l.maxDepth = options.maxDepth;
        return l;
    }

    // Canonical text form; parsing it back yields a digest-equal model.
    std::string toText() const;
    Digest digest() const;
};

Model parseModel(std::string_view text, std::string_view filename = "<input>");
Model loadModelFile(const std::string& path);

} // namespace hornets
