#pragma once

#include <compare>
#include <string>

#include "hornets/multiset.hpp"
#include "hornets/naming.hpp"
#include "hornets/object_net.hpp"
#include "hornets/symbol.hpp"

namespace hornets {

// One net-token: an object net with its own marking, sitting on a system
// place. The object marking ranges over the kind's place universe, not just
// the net's currently active places; structure rewrites keep tokens intact.
struct Addend {
    Symbol place;
    ObjectNetRef net;
    Multiset<Symbol> marking;

    friend bool operator==(const Addend& a, const Addend& b) {
        return a.place == b.place && sameNet(a.net, b.net) && a.marking == b.marking;
    }

    friend std::strong_ordering operator<=>(const Addend& a, const Addend& b) {
        if (auto c = a.place <=> b.place; c != 0) return c;
        if (auto c = a.net->digest() <=> b.net->digest(); c != 0) return c;
        if (auto c = a.net->canonicalKey() <=> b.net->canonicalKey(); c != 0) return c;
        return a.marking <=> b.marking;
    }
};

// Global state: a multiset of net-tokens, kept in canonical sorted form.
class NestedMarking {
public:
    NestedMarking() = default;

    static NestedMarking single(Symbol place, ObjectNetRef net, Multiset<Symbol> marking) {
        NestedMarking m;
        m.add(Addend{place, std::move(net), std::move(marking)});
        return m;
    }

    void add(Addend a, Multiset<Addend>::Count n = 1) { addends_.add(std::move(a), n); }

    const Multiset<Addend>& addends() const noexcept { return addends_; }
    bool empty() const noexcept { return addends_.empty(); }

    friend NestedMarking operator+(const NestedMarking& a, const NestedMarking& b) {
        NestedMarking out;
        out.addends_ = a.addends_ + b.addends_;
        return out;
    }

    friend NestedMarking operator-(const NestedMarking& a, const NestedMarking& b) {
        NestedMarking out;
        out.addends_ = a.addends_ - b.addends_;
        return out;
    }

    bool leq(const NestedMarking& other) const noexcept { return addends_.leq(other.addends_); }

    bool operator==(const NestedMarking&) const = default;
    auto operator<=>(const NestedMarking&) const = default;

    // Multiset of system places holding exactly this object net.
    Multiset<Symbol> proj1(const ObjectNet& net) const;

    // Sum of the markings of all net-tokens with exactly this object net.
    Multiset<Symbol> proj2Net(const ObjectNet& net) const;

    // Sum of the markings of all net-tokens of the given kind.
    Multiset<Symbol> proj2Kind(Symbol kind) const;

    // Canonical identity encoding; equal markings encode byte-identically.
    std::string encode() const;
    Digest digest() const { return fnv1a(encode()); }

    // Human-readable form, e.g. "p[N1, v] + q[N2, s]".
    std::string print(const NameTable* names = nullptr) const;

private:
    Multiset<Addend> addends_;
};

std::string printObjectMarking(const Multiset<Symbol>& m);

} // namespace hornets
