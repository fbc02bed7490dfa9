#pragma once

#include <map>
#include <string>

#include "hornets/multiset.hpp"
#include "hornets/net_algebra.hpp"
#include "hornets/object_net.hpp"
#include "hornets/symbol.hpp"

namespace hornets {

// One synchronisation label entry: the term names the called object net,
// the channel names the handshake.
struct SyncEntry {
    NetTerm term;
    Symbol channel;

    friend bool operator==(const SyncEntry& a, const SyncEntry& b) {
        return a.term == b.term && a.channel == b.channel;
    }
    friend std::strong_ordering operator<=>(const SyncEntry& a, const SyncEntry& b) {
        if (auto c = a.term <=> b.term; c != 0) return c;
        return a.channel <=> b.channel;
    }
};

struct SysPlace {
    Symbol name;
    Symbol kind;
};

struct SysTransition {
    Symbol name;
    std::map<Symbol, Multiset<NetTerm>> pre;  // place -> multiset of terms
    std::map<Symbol, Multiset<NetTerm>> post;
    Guard guard;
    Multiset<SyncEntry> sync;
    double rate = 1.0;
    bool mapeRated = false; // rate derived from transformation complexity at load
};

// The algebraic system net. Immutable after validation; validation also
// infers per-transition variable kinds from the arc typing constraint.
class SystemNet {
public:
    void addPlace(Symbol name, Symbol kind);
    void addTransition(SysTransition t);

    const std::map<Symbol, SysPlace>& places() const noexcept { return places_; }
    const std::map<Symbol, SysTransition>& transitions() const noexcept { return transitions_; }

    bool hasPlace(Symbol p) const noexcept { return places_.count(p) > 0; }
    bool hasTransition(Symbol t) const noexcept { return transitions_.count(t) > 0; }
    const SysPlace& place(Symbol p) const;
    const SysTransition& transition(Symbol t) const;

    Symbol placeKind(Symbol p) const { return place(p).kind; }

    void setRate(Symbol t, double rate);

    // Checks kind-correctness of every inscription, that guard and sync
    // variables occur in the preset, channel membership, and positive rates.
    void validate(const std::map<Symbol, Kind>& kinds, const OpRegistry& ops);
    bool validated() const noexcept { return validated_; }

    // Variable kinds inferred during validate(), per transition.
    const std::map<Symbol, Symbol>& varKinds(Symbol t) const;

    std::string encode(bool withRates) const;
    Digest structuralDigest() const { return fnv1a(encode(false)); }
    Digest digest() const { return fnv1a(encode(true)); }

private:
    std::map<Symbol, SysPlace> places_;
    std::map<Symbol, SysTransition> transitions_;
    std::map<Symbol, std::map<Symbol, Symbol>> varKinds_;
    bool validated_ = false;
};

} // namespace hornets
