#include "hornets/object_net.hpp"

#include <sstream>

#include "hornets/errors.hpp"

namespace hornets {

namespace {

void encodeMarking(std::ostream& os, const Multiset<Symbol>& m) {
    bool first = true;
    for (const auto& [p, n] : m.entries()) {
        if (!first) os << ",";
        first = false;
        os << p.str() << ":" << n;
    }
}

} // namespace

ObjectNet::ObjectNet(Symbol kind, std::set<Symbol> places,
                     std::map<Symbol, ObjTransition> transitions)
    : kind_(kind), places_(std::move(places)), transitions_(std::move(transitions)) {
    for (const auto& [name, t] : transitions_) {
        if (!(t.rate > 0.0))
            throw ModelError("object net transition '" + name.str() + "' needs a positive rate");
        for (const auto& [p, n] : t.pre.entries())
            if (!places_.count(p))
                throw ModelError("transition '" + name.str() + "' consumes from undeclared place '" +
                                 p.str() + "'");
        for (const auto& [p, n] : t.post.entries())
            if (!places_.count(p))
                throw ModelError("transition '" + name.str() + "' produces to undeclared place '" +
                                 p.str() + "'");
    }

    // Canonical encoding: sorted places, sorted transitions, rates as exact
    // IEEE-754 bit patterns. Documented in the README for external tools.
    std::ostringstream os;
    os << "net{kind=" << kind_.str() << ";places=";
    bool first = true;
    for (Symbol p : places_) {
        if (!first) os << ",";
        first = false;
        os << p.str();
    }
    os << ";transitions=[";
    first = true;
    for (const auto& [name, t] : transitions_) {
        if (!first) os << ",";
        first = false;
        os << name.str() << "{pre=";
        encodeMarking(os, t.pre);
        os << ";post=";
        encodeMarking(os, t.post);
        os << ";rate=" << doubleBitsHex(t.rate) << ";label=" << t.label.str() << "}";
    }
    os << "]}";
    canonicalKey_ = os.str();
    digest_ = fnv1a(canonicalKey_);
}

ObjectNetRef ObjectNet::create(Symbol kind, std::set<Symbol> places,
                               std::map<Symbol, ObjTransition> transitions) {
    return ObjectNetRef(new ObjectNet(kind, std::move(places), std::move(transitions)));
}

const ObjTransition& ObjectNet::transition(Symbol t) const {
    auto it = transitions_.find(t);
    if (it == transitions_.end())
        throw EvalError("unknown object transition '" + t.str() + "'");
    return it->second;
}

std::optional<Symbol> ObjectNet::sourcePlace() const {
    std::optional<Symbol> found;
    for (Symbol p : places_) {
        bool hasIn = false;
        for (const auto& [name, t] : transitions_)
            if (t.post.contains(p)) {
                hasIn = true;
                break;
            }
        if (!hasIn) {
            if (found) return std::nullopt; // not unique
            found = p;
        }
    }
    return found;
}

std::optional<Symbol> ObjectNet::sinkPlace() const {
    std::optional<Symbol> found;
    for (Symbol p : places_) {
        bool hasOut = false;
        for (const auto& [name, t] : transitions_)
            if (t.pre.contains(p)) {
                hasOut = true;
                break;
            }
        if (!hasOut) {
            if (found) return std::nullopt;
            found = p;
        }
    }
    return found;
}

Multiset<Symbol> preSum(const ObjectNet& net, const Multiset<Symbol>& tset) {
    return liftSum<Symbol>(tset, [&](Symbol t) { return net.transition(t).pre; });
}

Multiset<Symbol> postSum(const ObjectNet& net, const Multiset<Symbol>& tset) {
    return liftSum<Symbol>(tset, [&](Symbol t) { return net.transition(t).post; });
}

bool objEnabled(const ObjectNet& net, const Multiset<Symbol>& marking,
                const Multiset<Symbol>& tset) {
    return preSum(net, tset).leq(marking);
}

FireEffect objFireEffect(const ObjectNet& net, const Multiset<Symbol>& tset) {
    return FireEffect{preSum(net, tset), postSum(net, tset)};
}

BigInt universeBound(std::size_t universeSize) {
    // The result has 2^(4n) bits; refuse anything past ~2^28 bits (32 MiB).
    if (4 * universeSize > 28)
        throw OverflowError("universe bound for " + std::to_string(universeSize) +
                            " places exceeds representable size");
    const unsigned exponentBits = static_cast<unsigned>(4 * universeSize);
    BigInt exponent = boost::multiprecision::pow(BigInt(2), exponentBits);
    return boost::multiprecision::pow(BigInt(2), exponent.convert_to<unsigned>());
}

} // namespace hornets
