#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hornets/nested_marking.hpp"
#include "hornets/net_algebra.hpp"
#include "hornets/system_net.hpp"

namespace hornets {

// Which object transitions fire jointly with a system transition, per net.
using ThetaMap = std::map<ObjectNetRef, Multiset<Symbol>, ObjectNetRefLess>;

// A nested event. Sync covers system-autonomous firing as the special case
// of an empty theta; ObjAutonomous is an object transition firing inside a
// net-token without moving it.
struct Event {
    enum class Type { Sync, ObjAutonomous };

    Type type = Type::Sync;

    // Sync
    Symbol transition;
    Binding alpha;
    ThetaMap theta;

    // ObjAutonomous
    Symbol place;
    ObjectNetRef net;
    Symbol objTransition;

    static Event sync(Symbol transition, Binding alpha, ThetaMap theta);
    static Event objAutonomous(Symbol place, ObjectNetRef net, Symbol objTransition);

    bool systemAutonomous() const;

    std::string encode() const;
    std::string print(const NameTable* names = nullptr) const;

    friend bool operator==(const Event& a, const Event& b) { return a.encode() == b.encode(); }
};

// A firing mode: the removed and the generated nested sub-markings. The
// firing rule leaves the token distribution over generated net-tokens open,
// so one event can have several modes.
struct Mode {
    NestedMarking lambda;
    NestedMarking rho;

    std::string encode() const { return lambda.encode() + "=>" + rho.encode(); }
    std::string print(const NameTable* names = nullptr) const {
        return lambda.print(names) + " => " + rho.print(names);
    }

    friend bool operator==(const Mode& a, const Mode& b) {
        return a.lambda == b.lambda && a.rho == b.rho;
    }
};

struct EnabledEvent {
    Event event;
    std::vector<Mode> modes;
};

struct EngineLimits {
    std::size_t maxModesPerEvent = 10000;
};

// Enumerates and fires events against immutable markings. All outputs are
// canonically sorted, so identical inputs give identical enumerations.
class EventEngine {
public:
    EventEngine(const SystemNet& sys, const OpRegistry& ops, NameTable* names = nullptr,
                EngineLimits limits = {});

    const SystemNet& system() const noexcept { return sys_; }
    const OpRegistry& ops() const noexcept { return ops_; }
    NameTable* names() const noexcept { return names_; }
    const EngineLimits& limits() const noexcept { return limits_; }

    // All bindings of t's variables to nets occurring in mu on
    // kind-compatible places for which the input conjunct is satisfiable.
    std::vector<Binding> enumerateBindings(Symbol t, const NestedMarking& mu) const;

    // All label-matching synchronisation maps for t under alpha, filtered by
    // the necessary kind-level token condition against mu.
    std::vector<ThetaMap> enumerateTheta(Symbol t, const Binding& alpha,
                                         const NestedMarking& mu) const;

    // The four-conjunct enabling predicate.
    bool checkPhi(const Event& ev, const NestedMarking& lambda, const NestedMarking& rho) const;

    // All modes (lambda, rho) with lambda part of mu and checkPhi true,
    // deduplicated canonically. Throws ResourceLimitError past the cap.
    std::vector<Mode> enumerateModes(const Event& ev, const NestedMarking& mu) const;

    // Every event enabled in mu (guard included), with its modes, in
    // canonical order.
    std::vector<EnabledEvent> enabledEvents(const NestedMarking& mu) const;

    // Successor marking mu - lambda + rho. Throws NotEnabledError if the
    // mode is not enabled in mu.
    NestedMarking fire(const NestedMarking& mu, const Event& ev, const Mode& mode) const;

    bool guardHolds(const Event& ev) const;

private:
    const SystemNet& sys_;
    const OpRegistry& ops_;
    NameTable* names_;
    EngineLimits limits_;
};

} // namespace hornets
