#include <doctest.h>

#include "hornets/bos.hpp"
#include "hornets/mape.hpp"
#include "support/fixtures.hpp"

using namespace hornets;

namespace {
Symbol S(const char* s) { return Symbol(s); }
} // namespace

TEST_CASE("term operator counting") {
    NetTerm x = NetTerm::var(S("x"));
    CHECK(termOpCount(x) == 0);

    NetTerm par = NetTerm::op(S("par"), {x, NetTerm::var(S("y"))});
    CHECK(termOpCount(par) == 1);

    NetTerm nested = NetTerm::op(
        S("updRate"), {NetTerm::op(S("fixChoice"), {x}, {S("a0")})}, {S("b1"), 2.0});
    CHECK(termOpCount(nested) == 2);
}

TEST_CASE("transformation complexity of the composition transition") {
    auto f = fixtures::makeFig2();
    const OpRegistry& ops = OpRegistry::builtins();

    // pre x, y and post (x || y): one structural operator
    CHECK(transformationComplexity(f.system, S("t"), ops) == 1);

    // variable-only inscriptions count zero
    auto f3 = fixtures::makeFig3();
    CHECK(transformationComplexity(f3.system, S("a"), ops) == 0);
    CHECK(transformationComplexity(f3.system, S("b"), ops) == 0);
}

TEST_CASE("rate updates are free by default, charged in strict mode") {
    BosModel model = buildBosModel({});
    const OpRegistry& ops = OpRegistry::builtins();

    // play transitions rewrite rates only; adapt transitions restructure
    CHECK(transformationComplexity(model.system, S("play_a0_a1"), ops) == 0);
    CHECK(transformationComplexity(model.system, S("play_a0_b1"), ops) == 0);
    CHECK(transformationComplexity(model.system, S("adapt_a0"), ops) == 1);

    MapeConfig strict;
    strict.strictCounting = true;
    CHECK(transformationComplexity(model.system, S("play_a0_a1"), ops, strict) == 2);
    CHECK(transformationComplexity(model.system, S("play_a0_b1"), ops, strict) == 0);
    // guard arithmetic is charged too: div, add, two rateOf atoms, plus fixChoice
    CHECK(transformationComplexity(model.system, S("adapt_a0"), ops, strict) == 6);
}

TEST_CASE("mape rates decay exponentially in the complexity") {
    auto f2 = fixtures::makeFig2();
    auto f3 = fixtures::makeFig3();
    const OpRegistry& ops = OpRegistry::builtins();

    CHECK(mapeRate(f3.system, S("a"), ops, MapeConfig{0.7, false}) == 1.0); // gamma^0
    CHECK(mapeRate(f2.system, S("t"), ops, MapeConfig{0.5, false}) == 0.5);

    // TC = 3 via three nested structural operators
    std::map<Symbol, Kind> kinds = f2.kinds;
    SystemNet sys;
    sys.addPlace(S("p"), S("WFN"));
    SysTransition t;
    t.name = S("deep");
    NetTerm x = NetTerm::var(S("x"));
    t.pre[S("p")].add(x);
    t.post[S("p")].add(NetTerm::op(
        S("par"), {NetTerm::op(S("par"), {NetTerm::op(S("par"), {x, x}), x}), x}));
    sys.addTransition(std::move(t));
    sys.validate(kinds, ops);
    CHECK(mapeRate(sys, S("deep"), ops, MapeConfig{0.5, false}) == 0.125);

    CHECK_THROWS_AS(mapeRate(f2.system, S("t"), ops, MapeConfig{0.0, false}), ModelError);
    CHECK(mapeRate(f3.system, S("a"), ops, MapeConfig{0.0, false}) == 1.0); // TC = 0
    CHECK_THROWS_AS(mapeRate(f2.system, S("t"), ops, MapeConfig{1.5, false}), ModelError);
}

TEST_CASE("applying mape rates touches nothing but the rates") {
    auto f = fixtures::makeFig3();
    const OpRegistry& ops = OpRegistry::builtins();
    MapeConfig cfg{0.5, false};

    SystemNet rated = applyMapeRates(f.system, ops, cfg);
    CHECK(rated.transition(S("a")).rate == 1.0); // all TC = 0: uniform choice
    CHECK(rated.transition(S("b")).rate == 1.0);
    CHECK(f.system.transition(S("a")).rate == 2.0); // original untouched

    CHECK(rated.structuralDigest() == f.system.structuralDigest());

    SystemNet twice = applyMapeRates(rated, ops, cfg);
    CHECK(twice.encode(true) == rated.encode(true)); // idempotent
}

TEST_CASE("adding an operator strictly lowers the mape rate") {
    auto f = fixtures::makeFig2();
    const OpRegistry& ops = OpRegistry::builtins();
    MapeConfig cfg{0.5, false};

    std::map<Symbol, Kind> kinds = f.kinds;
    SystemNet deeper;
    deeper.addPlace(S("p"), S("WFN"));
    deeper.addPlace(S("q"), S("WFN"));
    deeper.addPlace(S("r"), S("WFN"));
    SysTransition t;
    t.name = S("t");
    NetTerm x = NetTerm::var(S("x")), y = NetTerm::var(S("y"));
    t.pre[S("p")].add(x);
    t.pre[S("q")].add(y);
    t.post[S("r")].add(NetTerm::op(S("par"), {NetTerm::op(S("par"), {x, y}), y}));
    deeper.addTransition(std::move(t));
    deeper.validate(kinds, ops);

    int tc0 = transformationComplexity(f.system, S("t"), ops, cfg);
    int tc1 = transformationComplexity(deeper, S("t"), ops, cfg);
    CHECK(tc1 == tc0 + 1);
    CHECK(mapeRate(deeper, S("t"), ops, cfg) < mapeRate(f.system, S("t"), ops, cfg));
}
