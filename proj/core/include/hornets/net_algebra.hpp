#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hornets/naming.hpp"
#include "hornets/object_net.hpp"
#include "hornets/rational.hpp"
#include "hornets/symbol.hpp"

namespace hornets {

// Variable assignment: maps term variables to object nets.
using Binding = std::map<Symbol, ObjectNetRef>;

// Scalar operator parameter: a number (rate delta, branch rate) or an
// object-transition name.
using TermParam = std::variant<double, Symbol>;

// Argument shape of an operator. Net arguments always come first.
enum class OpArg { Net, Num, Sym };

class NetTerm;

struct OpDef {
    Symbol name;
    std::vector<OpArg> signature;
    // Structural operators change net topology and count toward
    // transformation complexity; rate-arithmetic operators do not.
    bool structural = true;
    std::function<ObjectNetRef(const std::vector<ObjectNetRef>&, const std::vector<TermParam>&,
                               NameTable*)>
        apply;

    std::size_t netArity() const;
    std::size_t paramCount() const { return signature.size() - netArity(); }
};

class OpRegistry {
public:
    OpRegistry(); // pre-populated with par, xor, updRate, fixChoice

    static const OpRegistry& builtins();

    void add(OpDef def);
    const OpDef* find(Symbol name) const;

private:
    std::map<Symbol, OpDef> ops_;
};

// Term over the net algebra: a variable, an object-net constant, or an
// operator application. Immutable; cheap to copy; ordered by its canonical
// encoding so terms can live in multisets.
class NetTerm {
public:
    enum class Node { Var, Const, Op };

    NetTerm(); // placeholder: an anonymous variable

    static NetTerm var(Symbol name);
    static NetTerm constant(ObjectNetRef net);
    static NetTerm op(Symbol opName, std::vector<NetTerm> args, std::vector<TermParam> params = {});

    Node node() const;
    Symbol varName() const;
    const ObjectNetRef& constNet() const;
    Symbol opName() const;
    const std::vector<NetTerm>& args() const;
    const std::vector<TermParam>& params() const;

    bool isVar() const { return node() == Node::Var; }

    const std::string& encode() const;
    std::string print(const NameTable* names = nullptr) const;
    void collectVars(std::set<Symbol>& out) const;
    std::set<Symbol> freeVars() const;

    // Number of operator applications in the term (all operators).
    int opCount() const;

    // Operator applications whose operator is flagged structural.
    int structuralOpCount(const OpRegistry& ops) const;

    friend bool operator==(const NetTerm& a, const NetTerm& b) { return a.encode() == b.encode(); }
    friend std::strong_ordering operator<=>(const NetTerm& a, const NetTerm& b) {
        return a.encode() <=> b.encode();
    }

private:
    struct Impl;
    explicit NetTerm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Deterministic term evaluation. Throws EvalError on unbound variables,
// unknown operators, kind mismatches, or operator precondition failures.
ObjectNetRef evalTerm(const NetTerm& term, const Binding& alpha, const OpRegistry& ops,
                      NameTable* names = nullptr);

// ---------------------------------------------------------------------------
// The built-in workflow operators.

// AND-composition: fresh source and sink, a fork transition into both
// operands' sources and a join transition out of both sinks.
ObjectNetRef opParallel(const ObjectNetRef& a, const ObjectNetRef& b, NameTable* names = nullptr);

// XOR-choice: glues the operands' sources into one shared source and their
// sinks into one shared sink; the branch entry transitions get rates ra, rb.
ObjectNetRef opXor(const ObjectNetRef& a, const ObjectNetRef& b, double ra, double rb,
                   NameTable* names = nullptr);

// Same net with the rate of t shifted by delta (result must stay positive).
ObjectNetRef opUpdateRate(const ObjectNetRef& a, Symbol t, double delta,
                          NameTable* names = nullptr);

// Removes the branches competing with `keep` at its choice place.
ObjectNetRef opFixChoice(const ObjectNetRef& a, Symbol keep, NameTable* names = nullptr);

// ---------------------------------------------------------------------------
// Guards: boolean formulas over exact rational arithmetic with rateOf atoms.

class GuardArith {
public:
    enum class Node { Literal, RateOf, Add, Sub, Mul, Div, Neg };

    static GuardArith literal(Rat value);
    static GuardArith rateOf(Symbol var, Symbol transition);
    static GuardArith binary(Node op, GuardArith lhs, GuardArith rhs);
    static GuardArith negate(GuardArith inner);

    Node node() const;
    Rat eval(const Binding& alpha) const;
    void collectVars(std::set<Symbol>& out) const;
    std::string print() const;

    // Arithmetic operator applications plus rateOf atoms.
    int arithOpCount() const;

private:
    struct Impl;
    explicit GuardArith(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

class Guard {
public:
    enum class Node { True, Cmp, And, Or, Not };
    enum class CmpOp { Lt, Le, Eq, Gt, Ge };

    Guard(); // True
    static Guard alwaysTrue();
    static Guard compare(CmpOp op, GuardArith lhs, GuardArith rhs);
    static Guard conj(Guard a, Guard b);
    static Guard disj(Guard a, Guard b);
    static Guard negate(Guard a);

    bool isTrue() const;
    bool eval(const Binding& alpha) const; // throws EvalError (e.g. rateOf on a removed transition)
    void collectVars(std::set<Symbol>& out) const;
    std::set<Symbol> freeVars() const;
    std::string print() const;

    // Arithmetic operator applications in all comparison operands;
    // comparisons and connectives themselves count zero.
    int arithOpCount() const;

private:
    struct Impl;
    explicit Guard(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

} // namespace hornets
