#include "hornets/net_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <deque>
#include <sstream>

#include "hornets/errors.hpp"

namespace hornets {

namespace {

constexpr std::size_t kMaxComposedPlaces = 4096;

std::string formatDouble(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string mintTag(const ObjectNetRef& a, const ObjectNetRef& b, const char* tag) {
    Digest da = a->digest(), db = b->digest();
    std::string ka = a->canonicalKey(), kb = b->canonicalKey();
    if (db < da || (db == da && kb < ka)) {
        std::swap(da, db);
        std::swap(ka, kb);
    }
    Fnv1a h;
    h.update(hexDigest(da));
    h.update(hexDigest(db));
    h.update(tag);
    return shortHexDigest(h.value());
}

bool sameTransition(const ObjTransition& a, const ObjTransition& b) {
    return a.pre == b.pre && a.post == b.post && a.label == b.label &&
           std::bit_cast<std::uint64_t>(a.rate) == std::bit_cast<std::uint64_t>(b.rate);
}

void unionInto(std::map<Symbol, ObjTransition>& dst, Symbol name, const ObjTransition& t) {
    auto [it, inserted] = dst.emplace(name, t);
    if (!inserted && !sameTransition(it->second, t))
        throw EvalError("conflicting definitions of transition '" + name.str() +
                        "' in composition");
}

void unionInto(std::map<Symbol, ObjTransition>& dst, const std::map<Symbol, ObjTransition>& src) {
    for (const auto& [name, t] : src) unionInto(dst, name, t);
}

Multiset<Symbol> remapPlaces(const Multiset<Symbol>& m, Symbol from1, Symbol to1, Symbol from2,
                             Symbol to2) {
    Multiset<Symbol> out;
    for (const auto& [p, n] : m.entries()) {
        Symbol q = p == from1 ? to1 : (p == from2 ? to2 : p);
        out.add(q, n);
    }
    return out;
}

struct WorkflowEnds {
    Symbol source;
    Symbol sink;
};

WorkflowEnds workflowEnds(const ObjectNet& net, const char* opName) {
    auto src = net.sourcePlace();
    auto snk = net.sinkPlace();
    if (!src || !snk)
        throw EvalError(std::string("operand of ") + opName +
                        " is not a workflow net (needs a unique source and sink place)");
    return {*src, *snk};
}

void checkPlaceBudget(const std::set<Symbol>& places) {
    if (places.size() > kMaxComposedPlaces)
        throw OverflowError("universe overflow: composed net exceeds the place budget");
}

double needNum(const std::vector<TermParam>& ps, std::size_t i, const char* op) {
    if (i >= ps.size() || !std::holds_alternative<double>(ps[i]))
        throw EvalError(std::string("operator ") + op + " expects a numeric argument");
    return std::get<double>(ps[i]);
}

Symbol needSym(const std::vector<TermParam>& ps, std::size_t i, const char* op) {
    if (i >= ps.size() || !std::holds_alternative<Symbol>(ps[i]))
        throw EvalError(std::string("operator ") + op + " expects a transition-name argument");
    return std::get<Symbol>(ps[i]);
}

} // namespace

// ---------------------------------------------------------------------------
// Operators

ObjectNetRef opParallel(const ObjectNetRef& a, const ObjectNetRef& b, NameTable* names) {
    if (a->kind() != b->kind()) throw EvalError("kind mismatch in parallel composition");
    WorkflowEnds ea = workflowEnds(*a, "par");
    WorkflowEnds eb = workflowEnds(*b, "par");

    const std::string h = mintTag(a, b, "par");
    Symbol pi("#i." + h), pf("#f." + h), tFork("#fork." + h), tJoin("#join." + h);

    std::set<Symbol> places = a->places();
    places.insert(b->places().begin(), b->places().end());
    places.insert(pi);
    places.insert(pf);
    checkPlaceBudget(places);

    std::map<Symbol, ObjTransition> ts = a->transitions();
    unionInto(ts, b->transitions());

    ObjTransition fork;
    fork.pre.add(pi);
    fork.post.add(ea.source);
    fork.post.add(eb.source);
    ObjTransition join;
    join.pre.add(ea.sink);
    join.pre.add(eb.sink);
    join.post.add(pf);
    unionInto(ts, tFork, fork);
    unionInto(ts, tJoin, join);

    auto net = ObjectNet::create(a->kind(), std::move(places), std::move(ts));
    if (names)
        names->registerNet(*net,
                           "(" + names->displayName(*a) + " || " + names->displayName(*b) + ")");
    return net;
}

ObjectNetRef opXor(const ObjectNetRef& a, const ObjectNetRef& b, double ra, double rb,
                   NameTable* names) {
    if (a->kind() != b->kind()) throw EvalError("kind mismatch in xor composition");
    if (!(ra > 0.0) || !(rb > 0.0)) throw EvalError("xor branch rates must be positive");
    WorkflowEnds ea = workflowEnds(*a, "xor");
    WorkflowEnds eb = workflowEnds(*b, "xor");
    if (ea.source == ea.sink || eb.source == eb.sink)
        throw EvalError("operand of xor needs distinct source and sink places");

    const std::string h = mintTag(a, b, "xor");
    Symbol pi("#xi." + h), pf("#xf." + h);

    auto remapNet = [&](const ObjectNet& n, const WorkflowEnds& e) {
        std::map<Symbol, ObjTransition> out;
        for (const auto& [name, t] : n.transitions()) {
            ObjTransition r = t;
            r.pre = remapPlaces(t.pre, e.source, pi, e.sink, pf);
            r.post = remapPlaces(t.post, e.source, pi, e.sink, pf);
            out.emplace(name, std::move(r));
        }
        return out;
    };

    std::set<Symbol> places{pi, pf};
    for (Symbol p : a->places())
        if (p != ea.source && p != ea.sink) places.insert(p);
    for (Symbol p : b->places())
        if (p != eb.source && p != eb.sink) places.insert(p);
    checkPlaceBudget(places);

    std::map<Symbol, ObjTransition> ts = remapNet(*a, ea);
    unionInto(ts, remapNet(*b, eb));

    // Branch entry transitions carry the choice rates.
    std::set<Symbol> entryA, entryB;
    for (const auto& [name, t] : a->transitions())
        if (t.pre.contains(ea.source)) entryA.insert(name);
    for (const auto& [name, t] : b->transitions())
        if (t.pre.contains(eb.source)) entryB.insert(name);
    for (Symbol t : entryA) {
        if (entryB.count(t) && ra != rb)
            throw EvalError("conflicting branch rates for shared entry transition '" + t.str() +
                            "'");
        ts.at(t).rate = ra;
    }
    for (Symbol t : entryB)
        if (!entryA.count(t)) ts.at(t).rate = rb;

    auto net = ObjectNet::create(a->kind(), std::move(places), std::move(ts));
    if (names)
        names->registerNet(*net,
                           "(" + names->displayName(*a) + " xor " + names->displayName(*b) + ")");
    return net;
}

ObjectNetRef opUpdateRate(const ObjectNetRef& a, Symbol t, double delta, NameTable* names) {
    const ObjTransition& tr = a->transition(t);
    const double updated = tr.rate + delta;
    if (!(updated > 0.0))
        throw EvalError("rate update would make the rate of '" + t.str() + "' nonpositive");
    std::map<Symbol, ObjTransition> ts = a->transitions();
    ts.at(t).rate = updated;
    auto net = ObjectNet::create(a->kind(), a->places(), std::move(ts));
    if (names) {
        // Rate shifts keep the topology; reuse the operand's display name.
        if (auto nm = names->name(*a)) names->registerNet(*net, *nm);
    }
    return net;
}

ObjectNetRef opFixChoice(const ObjectNetRef& a, Symbol keep, NameTable* names) {
    const ObjTransition& kt = a->transition(keep);
    if (kt.pre.cardinality() != 1)
        throw EvalError("'" + keep.str() + "' is not a branch entry (needs a single input place)");
    const Symbol choice = kt.pre.begin()->first;

    std::set<Symbol> competitors;
    for (const auto& [name, t] : a->transitions())
        if (name != keep && t.pre.contains(choice)) competitors.insert(name);
    if (competitors.empty())
        throw EvalError("no xor choice to fix at '" + keep.str() + "'");

    // Forward closure over the arc graph, optionally blocking transitions.
    auto forward = [&](const std::set<Symbol>& seedTrans, const std::set<Symbol>& seedPlaces,
                       const std::set<Symbol>& blocked, std::set<Symbol>& outPlaces,
                       std::set<Symbol>& outTrans) {
        std::deque<std::pair<Symbol, bool>> queue; // (node, isTransition)
        for (Symbol t : seedTrans)
            if (outTrans.insert(t).second) queue.emplace_back(t, true);
        for (Symbol p : seedPlaces)
            if (outPlaces.insert(p).second) queue.emplace_back(p, false);
        while (!queue.empty()) {
            auto [node, isTrans] = queue.front();
            queue.pop_front();
            if (isTrans) {
                for (const auto& [p, n] : a->transition(node).post.entries())
                    if (outPlaces.insert(p).second) queue.emplace_back(p, false);
            } else {
                for (const auto& [tname, t] : a->transitions()) {
                    if (blocked.count(tname)) continue;
                    if (t.pre.contains(node) && outTrans.insert(tname).second)
                        queue.emplace_back(tname, true);
                }
            }
        }
    };

    std::set<Symbol> conePlaces, coneTrans;
    forward(competitors, {}, {}, conePlaces, coneTrans);
    std::set<Symbol> keptPlaces, keptTrans;
    forward({}, {choice}, competitors, keptPlaces, keptTrans);

    std::set<Symbol> places, deadPlaces;
    for (Symbol p : a->places()) {
        if (conePlaces.count(p) && !keptPlaces.count(p))
            deadPlaces.insert(p);
        else
            places.insert(p);
    }
    std::map<Symbol, ObjTransition> ts;
    for (const auto& [name, t] : a->transitions()) {
        if (competitors.count(name)) continue;
        if (coneTrans.count(name) && !keptTrans.count(name)) continue;
        const Multiset<Symbol> touched = t.pre + t.post;
        for (const auto& [p, n] : touched.entries())
            if (deadPlaces.count(p))
                throw EvalError("cannot cleanly remove the competing branch at '" + keep.str() +
                                "': place '" + p.str() + "' is shared with surviving structure");
        ts.emplace(name, t);
    }

    auto net = ObjectNet::create(a->kind(), std::move(places), std::move(ts));
    if (names)
        names->registerNet(*net, "fix(" + names->displayName(*a) + ", " + keep.str() + ")");
    return net;
}

// ---------------------------------------------------------------------------
// Operator registry

std::size_t OpDef::netArity() const {
    std::size_t n = 0;
    while (n < signature.size() && signature[n] == OpArg::Net) ++n;
    return n;
}

OpRegistry::OpRegistry() {
    add({Symbol("par"),
         {OpArg::Net, OpArg::Net},
         true,
         [](const std::vector<ObjectNetRef>& nets, const std::vector<TermParam>&, NameTable* nm) {
             return opParallel(nets[0], nets[1], nm);
         }});
    add({Symbol("xor"),
         {OpArg::Net, OpArg::Net, OpArg::Num, OpArg::Num},
         true,
         [](const std::vector<ObjectNetRef>& nets, const std::vector<TermParam>& ps,
            NameTable* nm) {
             return opXor(nets[0], nets[1], needNum(ps, 0, "xor"), needNum(ps, 1, "xor"), nm);
         }});
    add({Symbol("updRate"),
         {OpArg::Net, OpArg::Sym, OpArg::Num},
         false, // rate arithmetic, not a topology transformation
         [](const std::vector<ObjectNetRef>& nets, const std::vector<TermParam>& ps,
            NameTable* nm) {
             return opUpdateRate(nets[0], needSym(ps, 0, "updRate"), needNum(ps, 1, "updRate"),
                                 nm);
         }});
    add({Symbol("fixChoice"),
         {OpArg::Net, OpArg::Sym},
         true,
         [](const std::vector<ObjectNetRef>& nets, const std::vector<TermParam>& ps,
            NameTable* nm) { return opFixChoice(nets[0], needSym(ps, 0, "fixChoice"), nm); }});
}

const OpRegistry& OpRegistry::builtins() {
    static const OpRegistry reg;
    return reg;
}

void OpRegistry::add(OpDef def) {
    for (std::size_t i = def.netArity(); i < def.signature.size(); ++i)
        if (def.signature[i] == OpArg::Net)
            throw ModelError("operator '" + def.name.str() +
                             "': net arguments must precede scalar parameters");
    ops_[def.name] = std::move(def);
}

const OpDef* OpRegistry::find(Symbol name) const {
    auto it = ops_.find(name);
    return it == ops_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Terms

struct NetTerm::Impl {
    Node node = Node::Var;
    Symbol varName;
    ObjectNetRef constNet;
    Symbol opName;
    std::vector<NetTerm> args;
    std::vector<TermParam> params;
    std::string encoded;
    int opCount = 0;
};

NetTerm::NetTerm() : NetTerm(var(Symbol())) {}

NetTerm NetTerm::var(Symbol name) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Var;
    impl->varName = name;
    impl->encoded = "v(" + name.str() + ")";
    return NetTerm(std::move(impl));
}

NetTerm NetTerm::constant(ObjectNetRef net) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Const;
    impl->encoded = "c(" + hexDigest(net->digest()) + ")";
    impl->constNet = std::move(net);
    return NetTerm(std::move(impl));
}

NetTerm NetTerm::op(Symbol opName, std::vector<NetTerm> args, std::vector<TermParam> params) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Op;
    impl->opName = opName;
    impl->opCount = 1;
    for (const NetTerm& a : args) impl->opCount += a.opCount();
    std::ostringstream os;
    os << "o(" << opName.str();
    for (const NetTerm& a : args) os << ";" << a.encode();
    for (const TermParam& p : params) {
        if (std::holds_alternative<double>(p))
            os << ";n:" << doubleBitsHex(std::get<double>(p));
        else
            os << ";s:" << std::get<Symbol>(p).str();
    }
    os << ")";
    impl->encoded = os.str();
    impl->args = std::move(args);
    impl->params = std::move(params);
    return NetTerm(std::move(impl));
}

NetTerm::Node NetTerm::node() const { return impl_->node; }
Symbol NetTerm::varName() const { return impl_->varName; }
const ObjectNetRef& NetTerm::constNet() const { return impl_->constNet; }
Symbol NetTerm::opName() const { return impl_->opName; }
const std::vector<NetTerm>& NetTerm::args() const { return impl_->args; }
const std::vector<TermParam>& NetTerm::params() const { return impl_->params; }
const std::string& NetTerm::encode() const { return impl_->encoded; }
int NetTerm::opCount() const { return impl_->opCount; }

std::string NetTerm::print(const NameTable* names) const {
    switch (impl_->node) {
    case Node::Var:
        return impl_->varName.str();
    case Node::Const:
        return displayName(names, *impl_->constNet);
    case Node::Op: {
        std::ostringstream os;
        os << impl_->opName.str() << "(";
        bool first = true;
        for (const NetTerm& a : impl_->args) {
            if (!first) os << ", ";
            first = false;
            os << a.print(names);
        }
        for (const TermParam& p : impl_->params) {
            if (!first) os << ", ";
            first = false;
            if (std::holds_alternative<double>(p))
                os << formatDouble(std::get<double>(p));
            else
                os << std::get<Symbol>(p).str();
        }
        os << ")";
        return os.str();
    }
    }
    return {};
}

void NetTerm::collectVars(std::set<Symbol>& out) const {
    if (impl_->node == Node::Var)
        out.insert(impl_->varName);
    else
        for (const NetTerm& a : impl_->args) a.collectVars(out);
}

std::set<Symbol> NetTerm::freeVars() const {
    std::set<Symbol> out;
    collectVars(out);
    return out;
}

int NetTerm::structuralOpCount(const OpRegistry& ops) const {
    if (impl_->node != Node::Op) return 0;
    int n = 0;
    const OpDef* def = ops.find(impl_->opName);
    if (!def || def->structural) ++n;
    for (const NetTerm& a : impl_->args) n += a.structuralOpCount(ops);
    return n;
}

ObjectNetRef evalTerm(const NetTerm& term, const Binding& alpha, const OpRegistry& ops,
                      NameTable* names) {
    switch (term.node()) {
    case NetTerm::Node::Var: {
        auto it = alpha.find(term.varName());
        if (it == alpha.end())
            throw EvalError("unbound variable '" + term.varName().str() + "'");
        return it->second;
    }
    case NetTerm::Node::Const:
        return term.constNet();
    case NetTerm::Node::Op: {
        const OpDef* def = ops.find(term.opName());
        if (!def) throw EvalError("unknown operator '" + term.opName().str() + "'");
        if (term.args().size() != def->netArity() || term.params().size() != def->paramCount())
            throw EvalError("operator arity mismatch for '" + term.opName().str() + "'");
        std::vector<ObjectNetRef> vals;
        vals.reserve(term.args().size());
        for (const NetTerm& a : term.args()) vals.push_back(evalTerm(a, alpha, ops, names));
        return def->apply(vals, term.params(), names);
    }
    }
    throw EvalError("corrupt term");
}

// ---------------------------------------------------------------------------
// Guards

struct GuardArith::Impl {
    Node node = Node::Literal;
    Rat literal;
    Symbol var, transition;
    std::vector<GuardArith> children;
};

GuardArith GuardArith::literal(Rat value) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Literal;
    impl->literal = std::move(value);
    return GuardArith(std::move(impl));
}

GuardArith GuardArith::rateOf(Symbol var, Symbol transition) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::RateOf;
    impl->var = var;
    impl->transition = transition;
    return GuardArith(std::move(impl));
}

GuardArith GuardArith::binary(Node op, GuardArith lhs, GuardArith rhs) {
    auto impl = std::make_shared<Impl>();
    impl->node = op;
    impl->children = {std::move(lhs), std::move(rhs)};
    return GuardArith(std::move(impl));
}

GuardArith GuardArith::negate(GuardArith inner) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Neg;
    impl->children = {std::move(inner)};
    return GuardArith(std::move(impl));
}

GuardArith::Node GuardArith::node() const { return impl_->node; }

Rat GuardArith::eval(const Binding& alpha) const {
    switch (impl_->node) {
    case Node::Literal:
        return impl_->literal;
    case Node::RateOf: {
        auto it = alpha.find(impl_->var);
        if (it == alpha.end())
            throw EvalError("unbound variable '" + impl_->var.str() + "' in rateOf");
        return ratFromDouble(it->second->rate(impl_->transition));
    }
    case Node::Add:
        return impl_->children[0].eval(alpha) + impl_->children[1].eval(alpha);
    case Node::Sub:
        return impl_->children[0].eval(alpha) - impl_->children[1].eval(alpha);
    case Node::Mul:
        return impl_->children[0].eval(alpha) * impl_->children[1].eval(alpha);
    case Node::Div: {
        Rat d = impl_->children[1].eval(alpha);
        if (d == 0) throw EvalError("division by zero in guard");
        return impl_->children[0].eval(alpha) / d;
    }
    case Node::Neg:
        return -impl_->children[0].eval(alpha);
    }
    throw EvalError("corrupt guard expression");
}

void GuardArith::collectVars(std::set<Symbol>& out) const {
    if (impl_->node == Node::RateOf)
        out.insert(impl_->var);
    else
        for (const GuardArith& c : impl_->children) c.collectVars(out);
}

int GuardArith::arithOpCount() const {
    switch (impl_->node) {
    case Node::Literal:
        return 0;
    case Node::RateOf:
        return 1;
    default: {
        int n = 1;
        for (const GuardArith& c : impl_->children) n += c.arithOpCount();
        return n;
    }
    }
}

namespace {

// Exact decimal rendering for dyadic/decimal rationals, else "p/q" (which
// reparses as an exact division).
std::string ratLiteralPrint(const Rat& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    unsigned twos = 0, fives = 0;
    BigInt d = den;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return (neg ? "-" : "") + num.str() + "/" + den.str();
    unsigned digits = std::max(twos, fives);
    for (unsigned i = twos; i < digits; ++i) num *= 2;
    for (unsigned i = fives; i < digits; ++i) num *= 5;
    std::string s = num.str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        while (s.size() <= digits) s.insert(s.begin(), '0');
        out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
    }
    return (neg ? "-" : "") + out;
}

} // namespace

std::string GuardArith::print() const {
    switch (impl_->node) {
    case Node::Literal:
        return ratLiteralPrint(impl_->literal);
    case Node::RateOf:
        return "rateOf(" + impl_->var.str() + ", " + impl_->transition.str() + ")";
    case Node::Add:
        return "(" + impl_->children[0].print() + " + " + impl_->children[1].print() + ")";
    case Node::Sub:
        return "(" + impl_->children[0].print() + " - " + impl_->children[1].print() + ")";
    case Node::Mul:
        return "(" + impl_->children[0].print() + " * " + impl_->children[1].print() + ")";
    case Node::Div:
        return "(" + impl_->children[0].print() + " / " + impl_->children[1].print() + ")";
    case Node::Neg:
        return "(-" + impl_->children[0].print() + ")";
    }
    return {};
}

struct Guard::Impl {
    Node node = Node::True;
    CmpOp cmp = CmpOp::Lt;
    std::vector<GuardArith> terms;
    std::vector<Guard> children;
};

Guard::Guard() : impl_(std::make_shared<Impl>()) {}

Guard Guard::alwaysTrue() { return Guard(); }

Guard Guard::compare(CmpOp op, GuardArith lhs, GuardArith rhs) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Cmp;
    impl->cmp = op;
    impl->terms = {std::move(lhs), std::move(rhs)};
    return Guard(std::move(impl));
}

Guard Guard::conj(Guard a, Guard b) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::And;
    impl->children = {std::move(a), std::move(b)};
    return Guard(std::move(impl));
}

Guard Guard::disj(Guard a, Guard b) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Or;
    impl->children = {std::move(a), std::move(b)};
    return Guard(std::move(impl));
}

Guard Guard::negate(Guard a) {
    auto impl = std::make_shared<Impl>();
    impl->node = Node::Not;
    impl->children = {std::move(a)};
    return Guard(std::move(impl));
}

bool Guard::isTrue() const { return impl_->node == Node::True; }

bool Guard::eval(const Binding& alpha) const {
    switch (impl_->node) {
    case Node::True:
        return true;
    case Node::Cmp: {
        Rat l = impl_->terms[0].eval(alpha);
        Rat r = impl_->terms[1].eval(alpha);
        switch (impl_->cmp) {
        case CmpOp::Lt: return l < r;
        case CmpOp::Le: return l <= r;
        case CmpOp::Eq: return l == r;
        case CmpOp::Gt: return l > r;
        case CmpOp::Ge: return l >= r;
        }
        return false;
    }
    case Node::And:
        return impl_->children[0].eval(alpha) && impl_->children[1].eval(alpha);
    case Node::Or:
        return impl_->children[0].eval(alpha) || impl_->children[1].eval(alpha);
    case Node::Not:
        return !impl_->children[0].eval(alpha);
    }
    return false;
}

void Guard::collectVars(std::set<Symbol>& out) const {
    for (const GuardArith& t : impl_->terms) t.collectVars(out);
    for (const Guard& c : impl_->children) c.collectVars(out);
}

int Guard::arithOpCount() const {
    int n = 0;
    for (const GuardArith& t : impl_->terms) n += t.arithOpCount();
    for (const Guard& c : impl_->children) n += c.arithOpCount();
    return n;
}

std::set<Symbol> Guard::freeVars() const {
    std::set<Symbol> out;
    collectVars(out);
    return out;
}

std::string Guard::print() const {
    switch (impl_->node) {
    case Node::True:
        return "true";
    case Node::Cmp: {
        const char* op = "";
        switch (impl_->cmp) {
        case CmpOp::Lt: op = "<"; break;
        case CmpOp::Le: op = "<="; break;
        case CmpOp::Eq: op = "="; break;
        case CmpOp::Gt: op = ">"; break;
        case CmpOp::Ge: op = ">="; break;
        }
        return impl_->terms[0].print() + " " + op + " " + impl_->terms[1].print();
    }
    case Node::And:
        return "(" + impl_->children[0].print() + " && " + impl_->children[1].print() + ")";
    case Node::Or:
        return "(" + impl_->children[0].print() + " || " + impl_->children[1].print() + ")";
    case Node::Not:
        return "!(" + impl_->children[0].print() + ")";
    }
    return {};
}

} // namespace hornets
