#include <doctest.h>

#include "hornets/event_engine.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace hornets;

namespace {

Symbol S(const char* s) { return Symbol(s); }

const Event& findEvent(const std::vector<EnabledEvent>& events, Event::Type type,
                       const char* transition) {
    for (const EnabledEvent& ee : events) {
        if (ee.event.type != type) continue;
        Symbol t = type == Event::Type::Sync ? ee.event.transition : ee.event.objTransition;
        if (t == S(transition)) return ee.event;
    }
    REQUIRE_MESSAGE(false, "event not found");
    static Event dummy;
    return dummy;
}

} // namespace

TEST_CASE("the composition marking enables exactly three event families") {
    auto f = fixtures::makeFig2();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());

    auto events = engine.enabledEvents(f.mu0);
    REQUIRE(events.size() == 3);

    int syncs = 0, autos = 0;
    for (const EnabledEvent& ee : events) {
        REQUIRE(ee.modes.size() == 1);
        if (ee.event.type == Event::Type::Sync) {
            ++syncs;
            CHECK(ee.event.transition == S("t"));
            CHECK(ee.event.systemAutonomous());
            CHECK(ee.event.alpha.at(S("x"))->equals(*f.n1));
            CHECK(ee.event.alpha.at(S("y"))->equals(*f.n2));
        } else {
            ++autos;
            CHECK((ee.event.objTransition == S("c") || ee.event.objTransition == S("e")));
        }
    }
    CHECK(syncs == 1);
    CHECK(autos == 2);

    CHECK(engine.enabledEvents(NestedMarking{}).empty());
}

TEST_CASE("firing the composition transfers both object tokens") {
    auto f = fixtures::makeFig2();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());
    auto events = engine.enabledEvents(f.mu0);

    const Event& theta1 = findEvent(events, Event::Type::Sync, "t");
    auto modes = engine.enumerateModes(theta1, f.mu0);
    REQUIRE(modes.size() == 1);
    CHECK(modes[0].lambda == f.mu0);

    NestedMarking after = engine.fire(f.mu0, theta1, modes[0]);
    CHECK(after.print(f.names.get()) == "r[(N1 || N2), s + v]");

    const Event& theta2 = findEvent(events, Event::Type::ObjAutonomous, "e");
    auto modes2 = engine.enumerateModes(theta2, f.mu0);
    REQUIRE(modes2.size() == 1);
    NestedMarking after2 = engine.fire(f.mu0, theta2, modes2[0]);
    CHECK(after2.print(f.names.get()) == "p[N1, v] + q[N2, f2]");

    // the consumed tokens are gone on the second attempt
    CHECK_THROWS_AS(engine.fire(after2, theta2, modes2[0]), NotEnabledError);
}

TEST_CASE("the enabling predicate checks all four conjuncts") {
    auto f = fixtures::makeFig2();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());
    auto events = engine.enabledEvents(f.mu0);
    const Event& theta1 = findEvent(events, Event::Type::Sync, "t");

    ObjectNetRef n3 = opParallel(f.n1, f.n2, f.names.get());
    NestedMarking good = NestedMarking::single(S("r"), n3, {S("s"), S("v")});
    NestedMarking lost = NestedMarking::single(S("r"), n3, {S("s")});
    CHECK(engine.checkPhi(theta1, f.mu0, good));
    CHECK_FALSE(engine.checkPhi(theta1, f.mu0, lost)); // object token lost

    const Event& theta2 = findEvent(events, Event::Type::ObjAutonomous, "e");
    NestedMarking lam = NestedMarking::single(S("q"), f.n2, {S("s")});
    NestedMarking rho = NestedMarking::single(S("q"), f.n2, {S("f2")});
    CHECK(engine.checkPhi(theta2, lam, rho));
    CHECK_FALSE(engine.checkPhi(theta2, lam, lam)); // object net did not move
}

TEST_CASE("binding enumeration is marking-driven") {
    auto f = fixtures::makeFig2();
    EventEngine engine(f.system, OpRegistry::builtins(), f.names.get());

    auto bindings = engine.enumerateBindings(S("t"), f.mu0);
    REQUIRE(bindings.size() == 1);
    CHECK(bindings[0].at(S("x"))->equals(*f.n1));
    CHECK(bindings[0].at(S("y"))->equals(*f.n2));

    CHECK(engine.enumerateBindings(S("t"), NestedMarking{}).empty());

    // two distinct nets on p for x (and N2 still on q for y) -> two bindings
    NestedMarking mu2 = f.mu0 + NestedMarking::single(S("p"), f.n2, {}) +
                        NestedMarking::single(S("q"), f.n2, {});
    CHECK(engine.enumerateBindings(S("t"), mu2).size() == 2);
}

TEST_CASE("synchronisation maps match label multisets") {
    auto f3 = fixtures::makeFig3();
    EventEngine engine(f3.system, OpRegistry::builtins(), f3.names.get());

    Binding alpha{{S("x"), f3.n}};
    auto thetas = engine.enumerateTheta(S("a"), alpha, f3.mu0);
    REQUIRE(thetas.size() == 2); // N -> r and N -> s
    for (const ThetaMap& theta : thetas) {
        REQUIRE(theta.size() == 1);
        const Multiset<Symbol>& tset = theta.begin()->second;
        CHECK(tset.cardinality() == 1);
        CHECK((tset.contains(S("r")) || tset.contains(S("s"))));
    }

    // no synchronisation label: only theta_id
    auto f2 = fixtures::makeFig2();
    EventEngine engine2(f2.system, OpRegistry::builtins(), f2.names.get());
    Binding alpha2{{S("x"), f2.n1}, {S("y"), f2.n2}};
    auto thetas2 = engine2.enumerateTheta(S("t"), alpha2, f2.mu0);
    REQUIRE(thetas2.size() == 1);
    CHECK(thetas2[0].empty());
}

TEST_CASE("a doubled channel demand enumerates multisets of matching transitions") {
    std::map<Symbol, Kind> kinds;
    Kind k;
    k.name = S("K");
    k.placeUniverse = {S("w")};
    k.channels = {S("c")};
    kinds.emplace(k.name, k);

    ObjTransition t1, t2;
    t1.label = S("c");
    t2.label = S("c");
    t2.post.add(S("w"));
    auto net = ObjectNet::create(S("K"), {S("w")}, {{S("t1"), t1}, {S("t2"), t2}});

    SystemNet sys;
    sys.addPlace(S("P"), S("K"));
    SysTransition tr;
    tr.name = S("T");
    tr.pre[S("P")].add(NetTerm::var(S("x")));
    tr.post[S("P")].add(NetTerm::var(S("x")));
    tr.sync.add(SyncEntry{NetTerm::var(S("x")), S("c")});
    tr.sync.add(SyncEntry{NetTerm::var(S("x")), S("c")});
    sys.addTransition(std::move(tr));
    sys.validate(kinds, OpRegistry::builtins());

    EventEngine engine(sys, OpRegistry::builtins());
    NestedMarking mu = NestedMarking::single(S("P"), net, {});
    Binding alpha{{S("x"), net}};
    auto thetas = engine.enumerateTheta(S("T"), alpha, mu);
    CHECK(thetas.size() == 3); // {2 t1}, {t1 + t2}, {2 t2}
}

TEST_CASE("an open output distribution yields one mode per split") {
    std::map<Symbol, Kind> kinds;
    Kind k;
    k.name = S("K");
    k.placeUniverse = {S("w")};
    kinds.emplace(k.name, k);
    auto net = ObjectNet::create(S("K"), {S("w")}, {});

    SystemNet sys;
    sys.addPlace(S("P"), S("K"));
    sys.addPlace(S("Q1"), S("K"));
    sys.addPlace(S("Q2"), S("K"));
    SysTransition tr;
    tr.name = S("T");
    tr.pre[S("P")].add(NetTerm::var(S("x")));
    tr.post[S("Q1")].add(NetTerm::var(S("x")));
    tr.post[S("Q2")].add(NetTerm::var(S("x")));
    sys.addTransition(std::move(tr));
    sys.validate(kinds, OpRegistry::builtins());

    EventEngine engine(sys, OpRegistry::builtins());
    NestedMarking mu = NestedMarking::single(S("P"), net, {S("w")});
    auto events = engine.enabledEvents(mu);
    REQUIRE(events.size() == 1);
    CHECK(events[0].modes.size() == 2); // the token goes to either output

    // the mode cap is a hard error
    EventEngine capped(sys, OpRegistry::builtins(), nullptr, EngineLimits{1});
    CHECK_THROWS_AS(capped.enabledEvents(mu), ResourceLimitError);
}

TEST_CASE("kind-level token transfer pools across net-tokens") {
    // Two net-tokens of the same kind jointly enable a two-token demand.
    std::map<Symbol, Kind> kinds;
    Kind k;
    k.name = S("K");
    k.placeUniverse = {S("w")};
    k.channels = {S("c")};
    kinds.emplace(k.name, k);

    ObjTransition eat;
    eat.pre.add(S("w"), 2);
    eat.label = S("c");
    auto net = ObjectNet::create(S("K"), {S("w")}, {{S("eat"), eat}});

    SystemNet sys;
    sys.addPlace(S("P"), S("K"));
    SysTransition tr;
    tr.name = S("T");
    tr.pre[S("P")].add(NetTerm::var(S("x")));
    tr.pre[S("P")].add(NetTerm::var(S("x"))); // consumes two copies
    tr.post[S("P")].add(NetTerm::var(S("x")));
    tr.sync.add(SyncEntry{NetTerm::var(S("x")), S("c")});
    sys.addTransition(std::move(tr));
    sys.validate(kinds, OpRegistry::builtins());

    EventEngine engine(sys, OpRegistry::builtins());
    NestedMarking mu = NestedMarking::single(S("P"), net, {S("w")}) +
                       NestedMarking::single(S("P"), net, {S("w")});
    auto events = engine.enabledEvents(mu);
    REQUIRE(events.size() == 1);
    CHECK_FALSE(events[0].modes.empty()); // one token per net-token, pooled
}

TEST_CASE("engine agrees with the brute-force oracle on the worked examples") {
    auto f2 = fixtures::makeFig2();
    EventEngine e2(f2.system, OpRegistry::builtins(), f2.names.get());
    CHECK(oracle::compareEnabled(e2, f2.mu0) == "");

    auto f3 = fixtures::makeFig3();
    EventEngine e3(f3.system, OpRegistry::builtins(), f3.names.get());
    CHECK(oracle::compareEnabled(e3, f3.mu0) == "");
}
