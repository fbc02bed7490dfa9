#include "support/fixtures.hpp"

#include <cstdlib>

namespace fixtures {

using namespace hornets;

namespace {

ObjTransition arc(std::initializer_list<Symbol> pre, std::initializer_list<Symbol> post,
                  double rate = 1.0, const char* label = nullptr) {
    ObjTransition t;
    for (Symbol p : pre) t.pre.add(p);
    for (Symbol p : post) t.post.add(p);
    t.rate = rate;
    if (label) t.label = Symbol(label);
    return t;
}

} // namespace

Fig2 makeFig2() {
    Fig2 f;
    f.names = std::make_shared<NameTable>();

    Symbol wfn("WFN");
    Kind kind;
    kind.name = wfn;
    for (const char* p : {"i1", "u", "v", "f1", "i2", "s", "f2"})
        kind.placeUniverse.insert(Symbol(p));
    f.kinds.emplace(wfn, kind);

    f.n1 = ObjectNet::create(wfn, {Symbol("i1"), Symbol("u"), Symbol("v"), Symbol("f1")},
                             {{Symbol("a"), arc({Symbol("i1")}, {Symbol("u")})},
                              {Symbol("b"), arc({Symbol("u")}, {Symbol("v")})},
                              {Symbol("c"), arc({Symbol("v")}, {Symbol("f1")})}});
    f.n2 = ObjectNet::create(wfn, {Symbol("i2"), Symbol("s"), Symbol("f2")},
                             {{Symbol("d"), arc({Symbol("i2")}, {Symbol("s")})},
                              {Symbol("e"), arc({Symbol("s")}, {Symbol("f2")})}});
    f.names->registerNet(*f.n1, "N1");
    f.names->registerNet(*f.n2, "N2");

    f.system.addPlace(Symbol("p"), wfn);
    f.system.addPlace(Symbol("q"), wfn);
    f.system.addPlace(Symbol("r"), wfn);
    SysTransition t;
    t.name = Symbol("t");
    t.pre[Symbol("p")].add(NetTerm::var(Symbol("x")));
    t.pre[Symbol("q")].add(NetTerm::var(Symbol("y")));
    t.post[Symbol("r")].add(
        NetTerm::op(Symbol("par"), {NetTerm::var(Symbol("x")), NetTerm::var(Symbol("y"))}));
    f.system.addTransition(std::move(t));
    f.system.validate(f.kinds, OpRegistry::builtins());

    f.mu0 = NestedMarking::single(Symbol("p"), f.n1, {Symbol("v")}) +
            NestedMarking::single(Symbol("q"), f.n2, {Symbol("s")});
    return f;
}

Fig3 makeFig3() {
    Fig3 f;
    f.names = std::make_shared<NameTable>();

    Symbol k("K");
    Kind kind;
    kind.name = k;
    for (const char* p : {"o1", "o2", "o3"}) kind.placeUniverse.insert(Symbol(p));
    kind.channels.insert(Symbol("ch"));
    f.kinds.emplace(k, kind);

    f.n = ObjectNet::create(k, {Symbol("o1"), Symbol("o2"), Symbol("o3")},
                            {{Symbol("r"), arc({Symbol("o1")}, {Symbol("o2")}, 5.0, "ch")},
                             {Symbol("s"), arc({Symbol("o1")}, {Symbol("o3")}, 7.0, "ch")}});
    f.names->registerNet(*f.n, "N");

    f.system.addPlace(Symbol("p1"), k);
    f.system.addPlace(Symbol("p2"), k);
    for (auto [name, rate] : {std::pair{"a", 2.0}, std::pair{"b", 3.0}}) {
        SysTransition t;
        t.name = Symbol(name);
        t.pre[Symbol("p1")].add(NetTerm::var(Symbol("x")));
        t.post[Symbol("p2")].add(NetTerm::var(Symbol("x")));
        t.sync.add(SyncEntry{NetTerm::var(Symbol("x")), Symbol("ch")});
        t.rate = rate;
        f.system.addTransition(std::move(t));
    }
    f.system.validate(f.kinds, OpRegistry::builtins());

    f.mu0 = NestedMarking::single(Symbol("p1"), f.n, {Symbol("o1")});
    return f;
}

std::string modelPath(const std::string& name) {
    if (const char* env = std::getenv("HORNET_MODELS"))
        return std::string(env) + "/" + name;
    return "../models/" + name;
}

} // namespace fixtures
