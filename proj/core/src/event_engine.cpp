#include "hornets/event_engine.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include "hornets/errors.hpp"

namespace hornets {

// ---------------------------------------------------------------------------
// Event

Event Event::sync(Symbol transition, Binding alpha, ThetaMap theta) {
    Event e;
    e.type = Type::Sync;
    e.transition = transition;
    e.alpha = std::move(alpha);
    e.theta = std::move(theta);
    return e;
}

Event Event::objAutonomous(Symbol place, ObjectNetRef net, Symbol objTransition) {
    Event e;
    e.type = Type::ObjAutonomous;
    e.place = place;
    e.net = std::move(net);
    e.objTransition = objTransition;
    return e;
}

bool Event::systemAutonomous() const {
    if (type != Type::Sync) return false;
    for (const auto& [net, tset] : theta)
        if (!tset.empty()) return false;
    return true;
}

std::string Event::encode() const {
    std::ostringstream os;
    if (type == Type::Sync) {
        os << "sync{" << transition.str() << ";alpha=[";
        bool first = true;
        for (const auto& [v, net] : alpha) {
            if (!first) os << ",";
            first = false;
            os << v.str() << "=" << hexDigest(net->digest());
        }
        os << "];theta=[";
        first = true;
        for (const auto& [net, tset] : theta) {
            if (tset.empty()) continue;
            if (!first) os << ",";
            first = false;
            os << hexDigest(net->digest()) << ":{";
            bool f2 = true;
            for (const auto& [t, n] : tset.entries()) {
                if (!f2) os << ",";
                f2 = false;
                os << t.str() << ":" << n;
            }
            os << "}";
        }
        os << "]}";
    } else {
        os << "auto{" << place.str() << ";" << hexDigest(net->digest()) << ";"
           << objTransition.str() << "}";
    }
    return os.str();
}

std::string Event::print(const NameTable* names) const {
    std::ostringstream os;
    if (type == Type::Sync) {
        os << transition.str();
        if (!alpha.empty()) {
            os << "^{";
            bool first = true;
            for (const auto& [v, net] : alpha) {
                if (!first) os << ", ";
                first = false;
                os << v.str() << "=" << displayName(names, *net);
            }
            os << "}";
        }
        os << "[";
        bool any = false;
        bool first = true;
        for (const auto& [net, tset] : theta) {
            if (tset.empty()) continue;
            if (!first) os << ", ";
            first = false;
            any = true;
            os << displayName(names, *net) << "->" << printObjectMarking(tset);
        }
        if (!any) os << "id";
        os << "]";
    } else {
        os << "id[" << place.str() << "," << displayName(names, *net) << "]["
           << objTransition.str() << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Engine

EventEngine::EventEngine(const SystemNet& sys, const OpRegistry& ops, NameTable* names,
                         EngineLimits limits)
    : sys_(sys), ops_(ops), names_(names), limits_(limits) {
    if (!sys.validated()) throw ModelError("system net must be validated before use");
}

namespace {

using NetCounts = std::map<ObjectNetRef, Multiset<Symbol>::Count, ObjectNetRefLess>;
using PlaceNetCounts = std::map<Symbol, NetCounts>;

// Evaluated arc function: per place, how many tokens of which object net.
PlaceNetCounts evalArcs(const std::map<Symbol, Multiset<NetTerm>>& arcs, const Binding& alpha,
                        const OpRegistry& ops, NameTable* names) {
    PlaceNetCounts out;
    for (const auto& [place, terms] : arcs)
        for (const auto& [term, n] : terms.entries()) {
            ObjectNetRef net = evalTerm(term, alpha, ops, names);
            out[place][net] += n;
        }
    return out;
}

PlaceNetCounts pseudoArcs(const Event& ev) {
    PlaceNetCounts out;
    out[ev.place][ev.net] = 1;
    return out;
}

ThetaMap pseudoTheta(const Event& ev) {
    ThetaMap theta;
    Multiset<Symbol> tset;
    tset.add(ev.objTransition);
    theta.emplace(ev.net, std::move(tset));
    return theta;
}

// All multisets of size m over the (sorted) option list.
void multichoose(const std::vector<Symbol>& options, std::size_t m,
                 std::vector<Multiset<Symbol>>& out) {
    Multiset<Symbol> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = start; i < options.size(); ++i) {
            current.add(options[i]);
            rec(i, remaining - 1);
            current = current - Multiset<Symbol>{options[i]};
        }
    };
    rec(0, m);
}

// All ways to pick `needed` items from pool entries with given availability.
template <typename T>
void boundedSelections(const std::vector<std::pair<T, std::uint64_t>>& pool, std::uint64_t needed,
                       std::vector<std::vector<std::pair<T, std::uint64_t>>>& out) {
    std::vector<std::pair<T, std::uint64_t>> current;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t idx,
                                                              std::uint64_t remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        if (idx >= pool.size()) return;
        std::uint64_t avail = std::min(pool[idx].second, remaining);
        // Remaining pool must still be able to cover what we skip.
        for (std::uint64_t take = 0; take <= avail; ++take) {
            if (take > 0) current.emplace_back(pool[idx].first, take);
            rec(idx + 1, remaining - take);
            if (take > 0) current.pop_back();
        }
    };
    rec(0, needed);
}

// All ways to split multiset `mass` into `slots` ordered parts.
void splitMass(const Multiset<Symbol>& mass, std::size_t slots,
               std::vector<std::vector<Multiset<Symbol>>>& out) {
    std::vector<std::pair<Symbol, std::uint64_t>> elems(mass.entries().begin(),
                                                        mass.entries().end());
    std::vector<Multiset<Symbol>> current(slots);
    std::function<void(std::size_t)> recElem = [&](std::size_t e) {
        if (e == elems.size()) {
            out.push_back(current);
            return;
        }
        auto [sym, total] = elems[e];
        // All compositions of `total` into `slots` nonnegative parts.
        std::vector<std::uint64_t> parts(slots, 0);
        std::function<void(std::size_t, std::uint64_t)> recSlot = [&](std::size_t s,
                                                                      std::uint64_t remaining) {
            if (s + 1 == slots) {
                parts[s] = remaining;
                for (std::size_t i = 0; i < slots; ++i)
                    if (parts[i] > 0) current[i].add(sym, parts[i]);
                recElem(e + 1);
                for (std::size_t i = 0; i < slots; ++i)
                    if (parts[i] > 0) current[i] = current[i] - Multiset<Symbol>::ofCounts({{sym, parts[i]}});
                return;
            }
            for (std::uint64_t take = 0; take <= remaining; ++take) {
                parts[s] = take;
                recSlot(s + 1, remaining - take);
            }
        };
        recSlot(0, total);
    };
    if (slots == 0) {
        if (mass.empty()) out.push_back({});
        return;
    }
    recElem(0);
}

} // namespace

std::vector<Binding> EventEngine::enumerateBindings(Symbol t, const NestedMarking& mu) const {
    const SysTransition& tr = sys_.transition(t);
    const auto& vk = sys_.varKinds(t);

    std::vector<Symbol> vars;
    for (const auto& [v, kind] : vk) vars.push_back(v);

    // Candidate nets per variable: nets present in mu on places of the
    // variable's kind, deduplicated by structural identity.
    std::vector<std::vector<ObjectNetRef>> candidates(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Symbol kind = vk.at(vars[i]);
        std::map<ObjectNetRef, bool, ObjectNetRefLess> seen;
        for (const auto& [a, n] : mu.addends().entries())
            if (a.net->kind() == kind) seen.emplace(a.net, true);
        for (const auto& [net, b] : seen) candidates[i].push_back(net);
        if (candidates[i].empty() && !vars.empty()) return {};
    }

    std::vector<Binding> out;
    Binding current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            // Input conjunct satisfiability: enough matching net-tokens per
            // (place, net) demanded by the evaluated preset.
            PlaceNetCounts need;
            try {
                need = evalArcs(tr.pre, current, ops_, names_);
            } catch (const EvalError&) {
                return; // binding makes an inscription unevaluable
            }
            for (const auto& [place, nets] : need)
                for (const auto& [net, c] : nets) {
                    std::uint64_t avail = 0;
                    for (const auto& [a, n] : mu.addends().entries())
                        if (a.place == place && a.net->equals(*net)) avail += n;
                    if (avail < c) return;
                }
            out.push_back(current);
            return;
        }
        for (const ObjectNetRef& net : candidates[i]) {
            current[vars[i]] = net;
            rec(i + 1);
            current.erase(vars[i]);
        }
    };
    rec(0);
    return out;
}

std::vector<ThetaMap> EventEngine::enumerateTheta(Symbol t, const Binding& alpha,
                                                  const NestedMarking& mu) const {
    const SysTransition& tr = sys_.transition(t);

    // Demanded channel multiset per called object net.
    std::map<ObjectNetRef, Multiset<Symbol>, ObjectNetRefLess> demand;
    for (const auto& [entry, n] : tr.sync.entries()) {
        ObjectNetRef net = evalTerm(entry.term, alpha, ops_, names_);
        demand[net].add(entry.channel, n);
    }

    if (demand.empty()) return {ThetaMap{}}; // system-autonomous: theta_id only

    // Per net: all transition multisets whose labels match the demand.
    std::vector<std::pair<ObjectNetRef, std::vector<Multiset<Symbol>>>> perNet;
    for (const auto& [net, channels] : demand) {
        std::vector<Multiset<Symbol>> variants{Multiset<Symbol>{}};
        for (const auto& [ch, m] : channels.entries()) {
            std::vector<Symbol> options;
            for (const auto& [tname, ot] : net->transitions())
                if (ot.label == ch) options.push_back(tname);
            std::vector<Multiset<Symbol>> picks;
            multichoose(options, m, picks);
            if (picks.empty()) return {};
            std::vector<Multiset<Symbol>> next;
            for (const auto& base : variants)
                for (const auto& pick : picks) next.push_back(base + pick);
            variants = std::move(next);
        }
        perNet.emplace_back(net, std::move(variants));
    }

    // Cartesian product across nets, filtered by the necessary kind-level
    // token condition against mu (the exact check happens per mode).
    std::vector<ThetaMap> out;
    ThetaMap current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == perNet.size()) {
            std::map<Symbol, Multiset<Symbol>> needPerKind;
            for (const auto& [net, tset] : current)
                needPerKind[net->kind()] += preSum(*net, tset);
            for (const auto& [kind, need] : needPerKind)
                if (!need.leq(mu.proj2Kind(kind))) return;
            out.push_back(current);
            return;
        }
        for (const auto& tset : perNet[i].second) {
            current[perNet[i].first] = tset;
            rec(i + 1);
            current.erase(perNet[i].first);
        }
    };
    rec(0);
    return out;
}

bool EventEngine::checkPhi(const Event& ev, const NestedMarking& lambda,
                           const NestedMarking& rho) const {
    PlaceNetCounts preA, postA;
    ThetaMap theta;
    if (ev.type == Event::Type::Sync) {
        const SysTransition& tr = sys_.transition(ev.transition);
        preA = evalArcs(tr.pre, ev.alpha, ops_, names_);
        postA = evalArcs(tr.post, ev.alpha, ops_, names_);
        theta = ev.theta;
    } else {
        preA = pseudoArcs(ev);
        postA = pseudoArcs(ev);
        theta = pseudoTheta(ev);
    }

    // Conjuncts (1) and (2): exact net-token counts per place and net.
    auto countsMatch = [](const NestedMarking& m, const PlaceNetCounts& demanded) {
        for (const auto& [place, nets] : demanded)
            for (const auto& [net, c] : nets)
                if (m.proj1(*net).count(place) != c) return false;
        for (const auto& [a, n] : m.addends().entries()) {
            std::uint64_t c = 0;
            auto pit = demanded.find(a.place);
            if (pit != demanded.end()) {
                for (const auto& [net, cnt] : pit->second)
                    if (net->equals(*a.net)) c = cnt;
            }
            if (m.proj1(*a.net).count(a.place) != c) return false;
        }
        return true;
    };
    if (!countsMatch(lambda, preA)) return false;
    if (!countsMatch(rho, postA)) return false;

    // Conjuncts (3) and (4): kind-level object-token availability and balance.
    std::set<Symbol> kinds;
    for (const auto& [a, n] : lambda.addends().entries()) kinds.insert(a.net->kind());
    for (const auto& [a, n] : rho.addends().entries()) kinds.insert(a.net->kind());
    for (const auto& [net, tset] : theta) kinds.insert(net->kind());

    for (Symbol kind : kinds) {
        Multiset<Symbol> preTheta, postTheta;
        for (const auto& [net, tset] : theta)
            if (net->kind() == kind) {
                preTheta += preSum(*net, tset);
                postTheta += postSum(*net, tset);
            }
        Multiset<Symbol> inLambda = lambda.proj2Kind(kind);
        if (!preTheta.leq(inLambda)) return false;                      // (3)
        if (rho.proj2Kind(kind) != inLambda - preTheta + postTheta)     // (4)
            return false;
    }
    return true;
}

std::vector<Mode> EventEngine::enumerateModes(const Event& ev, const NestedMarking& mu) const {
    std::vector<Mode> out;
    std::set<std::string> seen;
    auto push = [&](Mode mode) {
        if (out.size() >= limits_.maxModesPerEvent)
            throw ResourceLimitError("event '" + ev.print(names_) + "' exceeded the mode cap (" +
                                     std::to_string(limits_.maxModesPerEvent) + ")");
        if (seen.insert(mode.encode()).second) {
            assert(checkPhi(ev, mode.lambda, mode.rho));
            out.push_back(std::move(mode));
        }
    };

    if (ev.type == Event::Type::ObjAutonomous) {
        const ObjTransition& ot = ev.net->transition(ev.objTransition);
        for (const auto& [a, n] : mu.addends().entries()) {
            if (a.place != ev.place || !a.net->equals(*ev.net)) continue;
            if (!ot.pre.leq(a.marking)) continue;
            Mode mode;
            mode.lambda = NestedMarking::single(a.place, a.net, a.marking);
            mode.rho = NestedMarking::single(a.place, a.net, a.marking - ot.pre + ot.post);
            push(std::move(mode));
        }
        std::sort(out.begin(), out.end(),
                  [](const Mode& a, const Mode& b) { return a.encode() < b.encode(); });
        return out;
    }

    const SysTransition& tr = sys_.transition(ev.transition);
    PlaceNetCounts preA = evalArcs(tr.pre, ev.alpha, ops_, names_);
    PlaceNetCounts postA = evalArcs(tr.post, ev.alpha, ops_, names_);

    // Synchronised object-token demand and production, per kind.
    std::map<Symbol, Multiset<Symbol>> preTheta, postTheta;
    for (const auto& [net, tset] : ev.theta) {
        preTheta[net->kind()] += preSum(*net, tset);
        postTheta[net->kind()] += postSum(*net, tset);
    }

    // Step 1: all ways to pick the consumed net-tokens from mu, exactly
    // matching the evaluated preset counts per (place, net).
    struct Requirement {
        Symbol place;
        ObjectNetRef net;
        std::uint64_t count;
        std::vector<std::vector<std::pair<Addend, std::uint64_t>>> selections;
    };
    std::vector<Requirement> requirements;
    for (const auto& [place, nets] : preA)
        for (const auto& [net, c] : nets) {
            Requirement req{place, net, c, {}};
            std::vector<std::pair<Addend, std::uint64_t>> pool;
            for (const auto& [a, n] : mu.addends().entries())
                if (a.place == place && a.net->equals(*net)) pool.emplace_back(a, n);
            boundedSelections(pool, c, req.selections);
            if (req.selections.empty()) return {};
            requirements.push_back(std::move(req));
        }

    // Output slots: one per generated net-token.
    struct Slot {
        Symbol place;
        ObjectNetRef net;
    };
    std::vector<Slot> slots;
    for (const auto& [place, nets] : postA)
        for (const auto& [net, c] : nets)
            for (std::uint64_t i = 0; i < c; ++i) slots.push_back({place, net});

    std::map<Symbol, std::vector<std::size_t>> slotsByKind;
    for (std::size_t i = 0; i < slots.size(); ++i)
        slotsByKind[slots[i].net->kind()].push_back(i);

    std::function<void(std::size_t, NestedMarking)> recLambda = [&](std::size_t ri,
                                                                    NestedMarking lambda) {
        if (ri < requirements.size()) {
            for (const auto& sel : requirements[ri].selections) {
                NestedMarking next = lambda;
                for (const auto& [a, cnt] : sel) next.add(a, cnt);
                recLambda(ri + 1, std::move(next));
            }
            return;
        }

        // Conjunct (3): lambda pools enough kind-level object tokens.
        std::set<Symbol> kinds;
        for (const auto& [a, n] : lambda.addends().entries()) kinds.insert(a.net->kind());
        for (const auto& [k, m] : preTheta) kinds.insert(k);
        for (const auto& [k, m] : postTheta) kinds.insert(k);
        for (const Slot& s : slots) kinds.insert(s.net->kind());

        std::map<Symbol, Multiset<Symbol>> residual;
        for (Symbol kind : kinds) {
            Multiset<Symbol> inLambda = lambda.proj2Kind(kind);
            auto pit = preTheta.find(kind);
            Multiset<Symbol> need = pit == preTheta.end() ? Multiset<Symbol>{} : pit->second;
            if (!need.leq(inLambda)) return;
            auto qit = postTheta.find(kind);
            Multiset<Symbol> made = qit == postTheta.end() ? Multiset<Symbol>{} : qit->second;
            residual[kind] = inLambda - need + made;
        }

        // Conjunct (4) forces the per-kind mass; kinds with mass but no
        // output slot admit no mode.
        std::vector<Symbol> splitKinds;
        std::vector<std::vector<std::vector<Multiset<Symbol>>>> splits;
        for (const auto& [kind, mass] : residual) {
            auto sit = slotsByKind.find(kind);
            std::size_t n = sit == slotsByKind.end() ? 0 : sit->second.size();
            if (n == 0) {
                if (!mass.empty()) return;
                continue;
            }
            std::vector<std::vector<Multiset<Symbol>>> ways;
            splitMass(mass, n, ways);
            splitKinds.push_back(kind);
            splits.push_back(std::move(ways));
        }

        std::vector<Multiset<Symbol>> slotMarking(slots.size());
        std::function<void(std::size_t)> recSplit = [&](std::size_t ki) {
            if (ki == splitKinds.size()) {
                Mode mode;
                mode.lambda = lambda;
                for (std::size_t i = 0; i < slots.size(); ++i)
                    mode.rho.add(Addend{slots[i].place, slots[i].net, slotMarking[i]});
                push(std::move(mode));
                return;
            }
            const auto& kindSlots = slotsByKind.at(splitKinds[ki]);
            for (const auto& way : splits[ki]) {
                for (std::size_t j = 0; j < kindSlots.size(); ++j)
                    slotMarking[kindSlots[j]] = way[j];
                recSplit(ki + 1);
                for (std::size_t j = 0; j < kindSlots.size(); ++j)
                    slotMarking[kindSlots[j]] = {};
            }
        };
        recSplit(0);
    };
    recLambda(0, NestedMarking{});

    std::sort(out.begin(), out.end(),
              [](const Mode& a, const Mode& b) { return a.encode() < b.encode(); });
    return out;
}

bool EventEngine::guardHolds(const Event& ev) const {
    if (ev.type == Event::Type::ObjAutonomous) return true; // G(id) := true
    const SysTransition& tr = sys_.transition(ev.transition);
    try {
        return tr.guard.eval(ev.alpha);
    } catch (const EvalError&) {
        // A guard that cannot be evaluated (e.g. rateOf on a transition the
        // bound net no longer has) disables the event structurally.
        return false;
    }
}

std::vector<EnabledEvent> EventEngine::enabledEvents(const NestedMarking& mu) const {
    std::vector<EnabledEvent> out;

    for (const auto& [tname, tr] : sys_.transitions()) {
        for (const Binding& alpha : enumerateBindings(tname, mu)) {
            std::vector<ThetaMap> thetas;
            try {
                thetas = enumerateTheta(tname, alpha, mu);
            } catch (const EvalError&) {
                continue;
            }
            for (ThetaMap& theta : thetas) {
                Event ev = Event::sync(tname, alpha, std::move(theta));
                if (!guardHolds(ev)) continue;
                std::vector<Mode> modes;
                try {
                    modes = enumerateModes(ev, mu);
                } catch (const EvalError&) {
                    continue; // a post inscription failed to evaluate
                }
                if (!modes.empty()) out.push_back({std::move(ev), std::move(modes)});
            }
        }
    }

    // Object-autonomous events: one per (place, net, unlabelled transition),
    // with one mode per distinct enabling net-token.
    std::map<std::string, Event> autoCandidates;
    for (const auto& [a, n] : mu.addends().entries())
        for (const auto& [tname, ot] : a.net->transitions()) {
            if (!ot.label.empty()) continue;
            if (!ot.pre.leq(a.marking)) continue;
            Event ev = Event::objAutonomous(a.place, a.net, tname);
            autoCandidates.emplace(ev.encode(), std::move(ev));
        }
    for (auto& [key, ev] : autoCandidates) {
        std::vector<Mode> modes = enumerateModes(ev, mu);
        if (!modes.empty()) out.push_back({std::move(ev), std::move(modes)});
    }

    std::sort(out.begin(), out.end(), [](const EnabledEvent& a, const EnabledEvent& b) {
        return a.event.encode() < b.event.encode();
    });
    return out;
}

NestedMarking EventEngine::fire(const NestedMarking& mu, const Event& ev, const Mode& mode) const {
    if (!mode.lambda.leq(mu))
        throw NotEnabledError("mode not enabled: consumed sub-marking is not part of the marking");
    bool phi;
    try {
        phi = checkPhi(ev, mode.lambda, mode.rho);
    } catch (const EvalError& e) {
        throw NotEnabledError(std::string("mode not enabled: ") + e.what());
    }
    if (!phi) throw NotEnabledError("mode not enabled: enabling predicate fails");
    if (!guardHolds(ev)) throw NotEnabledError("mode not enabled: guard fails");

    NestedMarking result = mu - mode.lambda + mode.rho;

    // System-autonomous firings conserve object tokens per kind.
    if (ev.systemAutonomous()) {
        std::set<Symbol> kinds;
        for (const auto& [a, n] : mode.lambda.addends().entries()) kinds.insert(a.net->kind());
        for (Symbol k : kinds) {
            (void)k;
            assert(mode.rho.proj2Kind(k) == mode.lambda.proj2Kind(k));
        }
    }
    return result;
}

} // namespace hornets
