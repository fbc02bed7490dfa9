#include "hornets/system_net.hpp"

#include <sstream>

#include "hornets/errors.hpp"

namespace hornets {

void SystemNet::addPlace(Symbol name, Symbol kind) {
    if (places_.count(name)) throw ModelError("duplicate system place '" + name.str() + "'");
    places_.emplace(name, SysPlace{name, kind});
    validated_ = false;
}

void SystemNet::addTransition(SysTransition t) {
    if (transitions_.count(t.name))
        throw ModelError("duplicate system transition '" + t.name.str() + "'");
    Symbol name = t.name;
    transitions_.emplace(name, std::move(t));
    validated_ = false;
}

const SysPlace& SystemNet::place(Symbol p) const {
    auto it = places_.find(p);
    if (it == places_.end()) throw ModelError("unknown system place '" + p.str() + "'");
    return it->second;
}

const SysTransition& SystemNet::transition(Symbol t) const {
    auto it = transitions_.find(t);
    if (it == transitions_.end()) throw ModelError("unknown system transition '" + t.str() + "'");
    return it->second;
}

void SystemNet::setRate(Symbol t, double rate) {
    auto it = transitions_.find(t);
    if (it == transitions_.end()) throw ModelError("unknown system transition '" + t.str() + "'");
    if (!(rate > 0.0))
        throw ModelError("system transition '" + t.str() + "' needs a positive rate");
    it->second.rate = rate;
    it->second.mapeRated = false;
}

namespace {

// Assigns `kind` to every variable in the term and checks constants and
// operator results against it. Operators without declared kinds are
// kind-generic: arguments and result share one kind.
void inferTermKinds(const NetTerm& term, Symbol kind, const std::map<Symbol, Kind>& kinds,
                    const OpRegistry& ops, Symbol transition,
                    std::map<Symbol, Symbol>& varKinds) {
    switch (term.node()) {
    case NetTerm::Node::Var: {
        auto [it, inserted] = varKinds.emplace(term.varName(), kind);
        if (!inserted && it->second != kind)
            throw ModelError("variable '" + term.varName().str() + "' of transition '" +
                             transition.str() + "' is used at kinds '" + it->second.str() +
                             "' and '" + kind.str() + "'");
        break;
    }
    case NetTerm::Node::Const:
        if (term.constNet()->kind() != kind)
            throw ModelError("constant of kind '" + term.constNet()->kind().str() +
                             "' used where kind '" + kind.str() + "' is required (transition '" +
                             transition.str() + "')");
        break;
    case NetTerm::Node::Op: {
        const OpDef* def = ops.find(term.opName());
        if (!def)
            throw ModelError("unknown operator '" + term.opName().str() + "' in transition '" +
                             transition.str() + "'");
        if (term.args().size() != def->netArity() || term.params().size() != def->paramCount())
            throw ModelError("operator arity mismatch for '" + term.opName().str() +
                             "' in transition '" + transition.str() + "'");
        for (const NetTerm& a : term.args()) inferTermKinds(a, kind, kinds, ops, transition, varKinds);
        break;
    }
    }
}

} // namespace

void SystemNet::validate(const std::map<Symbol, Kind>& kinds, const OpRegistry& ops) {
    varKinds_.clear();
    for (const auto& [name, p] : places_)
        if (!kinds.count(p.kind))
            throw ModelError("system place '" + name.str() + "' has undeclared kind '" +
                             p.kind.str() + "'");

    for (const auto& [tname, t] : transitions_) {
        auto& vk = varKinds_[tname];

        auto checkArcs = [&](const std::map<Symbol, Multiset<NetTerm>>& arcs) {
            for (const auto& [pname, terms] : arcs) {
                const SysPlace& p = place(pname); // throws on unknown place
                for (const auto& [term, n] : terms.entries())
                    inferTermKinds(term, p.kind, kinds, ops, tname, vk);
            }
        };
        checkArcs(t.pre);
        checkArcs(t.post);

        std::set<Symbol> preVars;
        for (const auto& [pname, terms] : t.pre)
            for (const auto& [term, n] : terms.entries()) term.collectVars(preVars);

        for (Symbol v : t.guard.freeVars())
            if (!preVars.count(v))
                throw ModelError("guard variable '" + v.str() + "' of transition '" +
                                 tname.str() + "' does not occur in its preset");

        for (const auto& [entry, n] : t.sync.entries()) {
            std::set<Symbol> syncVars = entry.term.freeVars();
            for (Symbol v : syncVars) {
                if (!preVars.count(v))
                    throw ModelError("sync variable '" + v.str() + "' of transition '" +
                                     tname.str() + "' does not occur in its preset");
                inferTermKinds(entry.term, vk.at(v), kinds, ops, tname, vk);
            }
            // Channel must belong to the kind of the called net.
            std::set<Symbol> termVars = entry.term.freeVars();
            Symbol termKind;
            if (entry.term.node() == NetTerm::Node::Const)
                termKind = entry.term.constNet()->kind();
            else if (!termVars.empty())
                termKind = vk.count(*termVars.begin()) ? vk.at(*termVars.begin()) : Symbol();
            if (!termKind.empty()) {
                auto kit = kinds.find(termKind);
                if (kit != kinds.end() && !kit->second.channels.count(entry.channel))
                    throw ModelError("channel '" + entry.channel.str() +
                                     "' is not declared for kind '" + termKind.str() + "'");
            }
        }

        if (!t.mapeRated && !(t.rate > 0.0))
            throw ModelError("system transition '" + tname.str() + "' needs a positive rate");
    }
    validated_ = true;
}

const std::map<Symbol, Symbol>& SystemNet::varKinds(Symbol t) const {
    auto it = varKinds_.find(t);
    if (it == varKinds_.end())
        throw ModelError("transition '" + t.str() + "' has no inferred variable kinds (validate first)");
    return it->second;
}

std::string SystemNet::encode(bool withRates) const {
    std::ostringstream os;
    os << "sys{places=[";
    bool first = true;
    for (const auto& [name, p] : places_) {
        if (!first) os << ",";
        first = false;
        os << name.str() << ":" << p.kind.str();
    }
    os << "];transitions=[";
    first = true;
    for (const auto& [name, t] : transitions_) {
        if (!first) os << ",";
        first = false;
        os << name.str() << "{pre=";
        auto arcEnc = [&os](const std::map<Symbol, Multiset<NetTerm>>& arcs) {
            bool f = true;
            for (const auto& [p, terms] : arcs) {
                for (const auto& [term, n] : terms.entries()) {
                    if (!f) os << "+";
                    f = false;
                    os << p.str() << "*" << n << ":" << term.encode();
                }
            }
        };
        arcEnc(t.pre);
        os << ";post=";
        arcEnc(t.post);
        os << ";guard=" << t.guard.print() << ";sync=";
        bool f = true;
        for (const auto& [entry, n] : t.sync.entries()) {
            if (!f) os << "+";
            f = false;
            os << entry.term.encode() << "@" << entry.channel.str() << "*" << n;
        }
        if (withRates) {
            os << ";rate=";
            if (t.mapeRated)
                os << "mape";
            else
                os << doubleBitsHex(t.rate);
        }
        os << "}";
    }
    os << "]}";
    return os.str();
}

} // namespace hornets
