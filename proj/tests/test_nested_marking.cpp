#include <doctest.h>

#include "hornets/nested_marking.hpp"
#include "support/fixtures.hpp"

using namespace hornets;

namespace {
Symbol S(const char* s) { return Symbol(s); }
} // namespace

TEST_CASE("projections on the initial composition marking") {
    auto f = fixtures::makeFig2();
    const NestedMarking& mu0 = f.mu0;

    // place projection
    CHECK(mu0.proj1(*f.n1) == Multiset<Symbol>{S("p")});
    CHECK(mu0.proj1(*f.n2) == Multiset<Symbol>{S("q")});

    // absent net
    auto other = ObjectNet::create(S("WFN"), {S("i1")}, {});
    CHECK(mu0.proj1(*other).empty());

    // duplicate addends are counted
    NestedMarking dup = NestedMarking::single(S("p"), f.n1, {}) +
                        NestedMarking::single(S("p"), f.n1, {});
    CHECK(dup.proj1(*f.n1) == Multiset<Symbol>::ofCounts({{S("p"), 2}}));

    // marking projection per net
    CHECK(mu0.proj2Net(*f.n1) == Multiset<Symbol>{S("v")});
    CHECK(mu0.proj2Net(*f.n2) == Multiset<Symbol>{S("s")});
    CHECK(NestedMarking{}.proj2Net(*f.n1).empty());

    // summed over two addends of the same net
    NestedMarking two = NestedMarking::single(S("p"), f.n1, {S("u")}) +
                        NestedMarking::single(S("q"), f.n1, {S("u"), S("v")});
    CHECK(two.proj2Net(*f.n1) == Multiset<Symbol>::ofCounts({{S("u"), 2}, {S("v"), 1}}));

    // kind projection pools all nets of the kind
    CHECK(mu0.proj2Kind(S("WFN")) == Multiset<Symbol>{S("v"), S("s")});
    CHECK(mu0.proj2Kind(S("other")).empty());
}

TEST_CASE("kind projection equals the sum of net projections") {
    auto f = fixtures::makeFig2();
    NestedMarking mu = f.mu0 + NestedMarking::single(S("r"), f.n1, {S("u")});
    Multiset<Symbol> summed = mu.proj2Net(*f.n1) + mu.proj2Net(*f.n2);
    CHECK(mu.proj2Kind(S("WFN")) == summed);
}

TEST_CASE("nested order is addend-wise") {
    auto f = fixtures::makeFig2();
    NestedMarking part = NestedMarking::single(S("p"), f.n1, {S("v")});
    CHECK(part.leq(f.mu0));
    CHECK(f.mu0.leq(f.mu0));
    CHECK_FALSE(f.mu0.leq(part));
    CHECK(NestedMarking{}.leq(part));
}

TEST_CASE("canonical form is stable and order-independent") {
    auto f = fixtures::makeFig2();
    NestedMarking ab = NestedMarking::single(S("p"), f.n1, {S("v")}) +
                       NestedMarking::single(S("q"), f.n2, {S("s")});
    NestedMarking ba = NestedMarking::single(S("q"), f.n2, {S("s")}) +
                       NestedMarking::single(S("p"), f.n1, {S("v")});
    CHECK(ab == ba);
    CHECK(ab.encode() == ba.encode());
    CHECK(ab.encode() == ab.encode());
    CHECK(ab.digest() == ba.digest());

    CHECK(f.mu0.print(f.names.get()) == "p[N1, v] + q[N2, s]");
    CHECK(NestedMarking::single(S("p"), f.n1, {}).print(f.names.get()) == "p[N1, 0]");
    CHECK(NestedMarking{}.print(f.names.get()) == "0");
}

TEST_CASE("marking arithmetic matches multiset arithmetic") {
    auto f = fixtures::makeFig2();
    NestedMarking a = NestedMarking::single(S("p"), f.n1, {S("v")});
    NestedMarking sum = f.mu0 + a;
    CHECK(sum - a == f.mu0);
    CHECK((a - f.mu0).empty()); // truncation
}
