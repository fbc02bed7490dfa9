#include "hornets/mape.hpp"

#include <cmath>

#include "hornets/errors.hpp"

namespace hornets {

int termOpCount(const NetTerm& term) { return term.opCount(); }

namespace {

void checkGamma(const MapeConfig& cfg) {
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0))
        throw ModelError("mape gamma must lie in [0, 1]");
}

} // namespace

int transformationComplexity(const SystemNet& sys, Symbol t, const OpRegistry& ops,
                             const MapeConfig& cfg) {
    const SysTransition& tr = sys.transition(t);

    auto termCount = [&](const NetTerm& term) {
        return cfg.strictCounting ? term.opCount() : term.structuralOpCount(ops);
    };

    int tc = 0;
    for (const auto& arcs : {tr.pre, tr.post})
        for (const auto& [place, terms] : arcs)
            for (const auto& [term, n] : terms.entries())
                tc += termCount(term) * static_cast<int>(n);

    // Guards cannot contain net-valued terms, so they contribute operator
    // applications only under strict counting.
    if (cfg.strictCounting) tc += tr.guard.arithOpCount();
    return tc;
}

double mapeRate(const SystemNet& sys, Symbol t, const OpRegistry& ops, const MapeConfig& cfg) {
    checkGamma(cfg);
    const int tc = transformationComplexity(sys, t, ops, cfg);
    if (tc > 0 && cfg.gamma == 0.0)
        throw ModelError("gamma = 0 would assign rate 0 to transition '" + t.str() + "'");
    return std::pow(cfg.gamma, tc);
}

SystemNet applyMapeRates(const SystemNet& sys, const OpRegistry& ops, const MapeConfig& cfg) {
    checkGamma(cfg);
    SystemNet out = sys;
    for (const auto& [name, t] : sys.transitions())
        out.setRate(name, mapeRate(sys, name, ops, cfg));
    return out;
}

} // namespace hornets
