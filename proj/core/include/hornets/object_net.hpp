#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "hornets/digest.hpp"
#include "hornets/multiset.hpp"
#include "hornets/rational.hpp"
#include "hornets/symbol.hpp"

namespace hornets {

// A net type. System places are typed by kinds; every object net of a kind
// draws its places from the kind's (finite, declared) place universe.
// Compositions mint additional reserved '#'-prefixed places; those are
// implicitly universe members and can never collide with declared names.
struct Kind {
    Symbol name;
    std::set<Symbol> placeUniverse;
    std::set<Symbol> channels;
};

struct ObjTransition {
    Multiset<Symbol> pre;
    Multiset<Symbol> post;
    double rate = 1.0;
    Symbol label; // empty symbol = no channel, fires autonomously
};

class ObjectNet;
using ObjectNetRef = std::shared_ptr<const ObjectNet>;

// Immutable p/t net with per-transition rates and channel labels.
// Identity is structural and includes rates and labels: two nets are the
// same object net iff their canonical encodings are byte-identical.
class ObjectNet {
public:
    static ObjectNetRef create(Symbol kind, std::set<Symbol> places,
                               std::map<Symbol, ObjTransition> transitions);

    Symbol kind() const noexcept { return kind_; }
    const std::set<Symbol>& places() const noexcept { return places_; }
    const std::map<Symbol, ObjTransition>& transitions() const noexcept { return transitions_; }

    bool hasTransition(Symbol t) const noexcept { return transitions_.count(t) > 0; }
    const ObjTransition& transition(Symbol t) const; // throws EvalError if unknown
    double rate(Symbol t) const { return transition(t).rate; }

    const std::string& canonicalKey() const noexcept { return canonicalKey_; }
    Digest digest() const noexcept { return digest_; }

    bool equals(const ObjectNet& other) const noexcept {
        return digest_ == other.digest_ && canonicalKey_ == other.canonicalKey_;
    }

    // Unique place without incoming (resp. outgoing) arcs, if any.
    std::optional<Symbol> sourcePlace() const;
    std::optional<Symbol> sinkPlace() const;

private:
    ObjectNet(Symbol kind, std::set<Symbol> places, std::map<Symbol, ObjTransition> transitions);

    Symbol kind_;
    std::set<Symbol> places_;
    std::map<Symbol, ObjTransition> transitions_;
    std::string canonicalKey_;
    Digest digest_ = 0;
};

struct ObjectNetRefLess {
    bool operator()(const ObjectNetRef& a, const ObjectNetRef& b) const noexcept {
        if (a->digest() != b->digest()) return a->digest() < b->digest();
        return a->canonicalKey() < b->canonicalKey();
    }
};

inline bool sameNet(const ObjectNetRef& a, const ObjectNetRef& b) noexcept {
    return a == b || a->equals(*b);
}

// pre# / post#: multiset extension of the arc functions to transition multisets.
Multiset<Symbol> preSum(const ObjectNet& net, const Multiset<Symbol>& tset);
Multiset<Symbol> postSum(const ObjectNet& net, const Multiset<Symbol>& tset);

// Whether marking m enables the multiset tset of transitions jointly.
bool objEnabled(const ObjectNet& net, const Multiset<Symbol>& marking,
                const Multiset<Symbol>& tset);

struct FireEffect {
    Multiset<Symbol> consumed;
    Multiset<Symbol> produced;
};

FireEffect objFireEffect(const ObjectNet& net, const Multiset<Symbol>& tset);

// Upper bound 2^(2^(4n)) on the number of object nets over an n-place
// universe. Refuses sizes whose value would not fit in memory.
BigInt universeBound(std::size_t universeSize);
inline BigInt universeBound(const Kind& k) { return universeBound(k.placeUniverse.size()); }

} // namespace hornets
