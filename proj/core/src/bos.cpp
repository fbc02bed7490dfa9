#include "hornets/bos.hpp"

#include <cstdio>
#include <sstream>

#include "hornets/errors.hpp"

namespace hornets {

namespace {

using namespace bos_names;

Symbol sym(const char* s) { return Symbol(s); }

// Atomic action net: source -> action -> sink, labelled with the action's
// synchronisation channel. The xor composition overrides the entry rate.
ObjectNetRef actionNet(Symbol kind, const char* action, const char* channel, NameTable& names) {
    std::string a(action);
    ObjTransition t;
    t.pre.add(Symbol("i_" + a));
    t.post.add(Symbol("f_" + a));
    t.label = Symbol(channel);
    auto net = ObjectNet::create(kind, {Symbol("i_" + a), Symbol("f_" + a)},
                                 {{Symbol(a), std::move(t)}});
    names.registerNet(*net, a);
    return net;
}

ObjectNetRef withReplay(const ObjectNetRef& net, NameTable& names) {
    auto src = net->sourcePlace();
    auto snk = net->sinkPlace();
    if (!src || !snk) throw ModelError("game workflow needs a unique source and sink");
    std::map<Symbol, ObjTransition> ts = net->transitions();
    ObjTransition replay;
    replay.pre.add(*snk);
    replay.post.add(*src);
    ts.emplace(sym(kReplay), std::move(replay));
    auto out = ObjectNet::create(net->kind(), net->places(), std::move(ts));
    names.registerNet(*out, names.displayName(*net));
    return out;
}

GuardArith dominanceFraction(Symbol var, Symbol preferred, Symbol other) {
    GuardArith num = GuardArith::rateOf(var, preferred);
    GuardArith den = GuardArith::binary(GuardArith::Node::Add, GuardArith::rateOf(var, preferred),
                                        GuardArith::rateOf(var, other));
    return GuardArith::binary(GuardArith::Node::Div, num, den);
}

} // namespace

void BosParams::validate() const {
    for (double r : {a0Rate, b0Rate, a1Rate, b1Rate})
        if (!(r > 0.0)) throw ModelError("battle-of-sexes branch rates must be positive");
    for (const auto& row : payoff)
        for (const auto& [r0, r1] : row)
            if (r0 < 0.0 || r1 < 0.0) throw ModelError("battle-of-sexes payoffs must be nonnegative");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ModelError("battle-of-sexes threshold must lie in (0, 1)");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ModelError("mape gamma must lie in [0, 1]");
}

BosModel buildBosModel(const BosParams& params) {
    params.validate();

    BosModel model;
    model.names = std::make_shared<NameTable>();
    NameTable& names = *model.names;

    Symbol kindName("WF");
    Symbol chA0("ch_a0"), chB0("ch_b0"), chA1("ch_a1"), chB1("ch_b1");

    ObjectNetRef a0 = actionNet(kindName, kActionA0, "ch_a0", names);
    ObjectNetRef b0 = actionNet(kindName, kActionB0, "ch_b0", names);
    ObjectNetRef a1 = actionNet(kindName, kActionA1, "ch_a1", names);
    ObjectNetRef b1 = actionNet(kindName, kActionB1, "ch_b1", names);

    ObjectNetRef choice0 = opXor(a0, b0, params.a0Rate, params.b0Rate, &names);
    ObjectNetRef choice1 = opXor(a1, b1, params.a1Rate, params.b1Rate, &names);
    ObjectNetRef game = withReplay(opParallel(choice0, choice1, &names), names);

    Kind kind;
    kind.name = kindName;
    kind.placeUniverse = game->places();
    kind.channels = {chA0, chB0, chA1, chB1};
    model.kinds.emplace(kindName, kind);

    model.system.addPlace(sym(kGamePlace), kindName);

    const Symbol x("x");
    const NetTerm varX = NetTerm::var(x);
    const Symbol actions[2][2] = {{sym(kActionA0), sym(kActionA1)},
                                  {sym(kActionB0), sym(kActionB1)}};
    const Symbol channels0[2] = {chA0, chB0};
    const Symbol channels1[2] = {chA1, chB1};

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            SysTransition t;
            t.name = sym(kPlay[i][j]);
            t.pre[sym(kGamePlace)].add(varX);
            NetTerm result = varX;
            auto [r0, r1] = params.payoff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (r0 > 0.0)
                result = NetTerm::op(Symbol("updRate"), {result}, {actions[i][0], r0});
            if (r1 > 0.0)
                result = NetTerm::op(Symbol("updRate"), {result}, {actions[j][1], r1});
            t.post[sym(kGamePlace)].add(result);
            t.sync.add(SyncEntry{varX, channels0[i]});
            t.sync.add(SyncEntry{varX, channels1[j]});
            model.system.addTransition(std::move(t));
        }

    auto addAdapt = [&](const char* name, Symbol preferred, Symbol other) {
        SysTransition t;
        t.name = sym(name);
        t.pre[sym(kGamePlace)].add(varX);
        t.post[sym(kGamePlace)].add(
            NetTerm::op(Symbol("fixChoice"), {varX}, {preferred}));
        t.guard = Guard::compare(Guard::CmpOp::Gt, dominanceFraction(x, preferred, other),
                                 GuardArith::literal(ratFromDouble(params.threshold)));
        model.system.addTransition(std::move(t));
    };
    addAdapt(kAdaptA0, sym(kActionA0), sym(kActionB0));
    addAdapt(kAdaptB0, sym(kActionB0), sym(kActionA0));

    model.system.validate(model.kinds, OpRegistry::builtins());
    model.system = applyMapeRates(model.system, OpRegistry::builtins(),
                                  MapeConfig{params.gamma, false});

    Multiset<Symbol> initialMarking;
    auto src = game->sourcePlace();
    // The replay transition closed the cycle; recover the start place from
    // the pre-replay structure instead.
    if (src) {
        initialMarking.add(*src);
    } else {
        initialMarking.add(game->transition(sym(kReplay)).post.begin()->first);
    }
    model.initial = NestedMarking::single(sym(kGamePlace), game, std::move(initialMarking));

    model.stoch.pseudoTransitionRate = 1.0;
    return model;
}

BosSample bosObserve(const NestedMarking& mu) {
    const ObjectNet* game = nullptr;
    for (const auto& [a, n] : mu.addends().entries()) {
        if (a.place != Symbol(kGamePlace)) continue;
        if (game || n != 1) throw ModelError("expected exactly one net-token on the game place");
        game = a.net.get();
    }
    if (!game) throw ModelError("expected exactly one net-token on the game place");

    BosSample s;
    const bool hasA0 = game->hasTransition(Symbol(kActionA0));
    const bool hasB0 = game->hasTransition(Symbol(kActionB0));
    if (hasA0 && hasB0) {
        s.structure = BosStructure::Xor;
        const double ra = game->rate(Symbol(kActionA0));
        const double rb = game->rate(Symbol(kActionB0));
        s.prA0 = ra / (ra + rb);
    } else if (hasA0) {
        s.structure = BosStructure::FixedA0;
        s.prA0 = 1.0;
    } else if (hasB0) {
        s.structure = BosStructure::FixedB0;
        s.prA0 = 0.0;
    } else {
        throw ModelError("game net-token lost both agent-0 actions");
    }
    const double ra1 = game->rate(Symbol(kActionA1));
    const double rb1 = game->rate(Symbol(kActionB1));
    s.prA1 = ra1 / (ra1 + rb1);
    return s;
}

namespace {

void markAdaptEnabled(BosSample& s, const std::vector<EventProbability>& enabled) {
    for (const EventProbability& ep : enabled) {
        if (ep.event.type != Event::Type::Sync) continue;
        if (ep.event.transition == Symbol(kAdaptA0)) s.adaptA0Enabled = true;
        if (ep.event.transition == Symbol(kAdaptB0)) s.adaptB0Enabled = true;
    }
}

std::string sampleCell(const BosSample& s) {
    const char* flag = s.structure == BosStructure::Xor
                           ? "xor"
                           : (s.structure == BosStructure::FixedA0 ? "fixed-a0" : "fixed-b0");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%s", s.prA0, s.prA1, flag);
    return buf;
}

} // namespace

BosRun runBos(const BosParams& params, std::uint64_t seed) {
    BosModel model = buildBosModel(params);
    EventEngine engine(model.system, OpRegistry::builtins(), model.names.get());

    BosRun run;
    run.params = params;
    run.samples.push_back(bosObserve(model.initial));

    SimulateHooks hooks;
    hooks.observe = [&run](const NestedMarking&, const std::vector<EventProbability>& enabled,
                           const Event&, const Mode&, const NestedMarking& after) {
        // `enabled` describes the pre-state, i.e. the sample recorded last.
        markAdaptEnabled(run.samples.back(), enabled);
        BosSample s = bosObserve(after);
        run.samples.push_back(s);
        return sampleCell(s);
    };
    run.trace = simulate(engine, model.initial, seed, params.horizon, model.stoch, &hooks);

    const NestedMarking& last =
        run.trace.steps.empty() ? model.initial : run.trace.steps.back().after;
    markAdaptEnabled(run.samples.back(), firingProbabilities(engine, last, model.stoch));
    return run;
}

std::string BosRun::toCsv() const {
    std::ostringstream os;
    os << "step,prA0,prA1,structure\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        os << i << "," << sampleCell(samples[i]) << "\n";
    return os.str();
}

} // namespace hornets
