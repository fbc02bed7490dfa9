#include "hornets/model_parser.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hornets/errors.hpp"
#include "hornets/mape.hpp"

namespace hornets {

namespace {

std::string formatDouble(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Tokenizer

struct Token {
    enum class Type { Ident, Number, Punct, Newline, End };
    Type type = Type::End;
    std::string text;
    int line = 1;
    int col = 1;
};

bool identStart(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '#';
}
bool identCont(char c) {
    return identStart(c) || (c >= '0' && c <= '9') || c == '.';
}

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Type type, std::string s, int l, int c) {
        out.push_back(Token{type, std::move(s), l, c});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            if (!out.empty() && out.back().type != Token::Type::Newline)
                push(Token::Type::Newline, "\n", line, col);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int startLine = line, startCol = col;
        if (identStart(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && identCont(text[j])) ++j;
            push(Token::Type::Ident, std::string(text.substr(i, j - i)), startLine, startCol);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::size_t j = i + 1;
            bool dot = false;
            while (j < text.size() &&
                   ((text[j] >= '0' && text[j] <= '9') || (text[j] == '.' && !dot))) {
                if (text[j] == '.') dot = true;
                ++j;
            }
            push(Token::Type::Number, std::string(text.substr(i, j - i)), startLine, startCol);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        // Two-character operators first.
        if (i + 1 < text.size()) {
            std::string two = std::string(text.substr(i, 2));
            if (two == "||" || two == "&&" || two == "<=" || two == ">=" || two == "==") {
                push(Token::Type::Punct, two, startLine, startCol);
                i += 2;
                col += 2;
                continue;
            }
        }
        static const std::string singles = "{}():;,+*/<>=!-[]@";
        if (singles.find(c) != std::string::npos) {
            push(Token::Type::Punct, std::string(1, c), startLine, startCol);
            ++i;
            ++col;
            continue;
        }
        throw ParseError(file, startLine, startCol,
                         std::string("unexpected character '") + c + "'");
    }
    push(Token::Type::End, "", line, col);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view text, std::string_view filename)
        : file_(filename), toks_(tokenize(text, file_)) {}

    Model parse() {
        bool sawSystem = false, sawMarkingSection = false, sawOptions = false;
        skipNewlines();
        while (!at(Token::Type::End)) {
            const Token& t = peek();
            if (t.type != Token::Type::Ident) fail("expected a section keyword");
            if (t.text == "kind") {
                parseKind();
            } else if (t.text == "objectnet") {
                parseObjectNet();
            } else if (t.text == "system") {
                if (sawSystem) fail("duplicate system section");
                sawSystem = true;
                parseSystem();
            } else if (t.text == "marking") {
                if (!sawSystem) fail("marking section before system section");
                sawMarkingSection = true;
                parseMarking();
            } else if (t.text == "options") {
                if (sawOptions) fail("duplicate options section");
                sawOptions = true;
                parseOptions();
            } else {
                fail("unknown section '" + t.text + "'");
            }
            skipNewlines();
        }
        if (!sawSystem) fail("no system section");
        if (!sawMarkingSection) fail("no marking section");
        finalize();
        return std::move(model_);
    }

private:
    std::string file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Model model_;
    std::vector<std::pair<Symbol, bool>> mapeMarked_; // transitions with rate mape
    int systemLine_ = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(file_, t.line, t.col, msg);
    }
    [[noreturn]] void failAt(int line, int col, const std::string& msg) const {
        throw ParseError(file_, line, col, msg);
    }

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(Token::Type type) const { return peek().type == type; }
    bool atPunct(const std::string& p) const {
        return peek().type == Token::Type::Punct && peek().text == p;
    }
    bool atIdent(const std::string& s) const {
        return peek().type == Token::Type::Ident && peek().text == s;
    }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    void expectPunct(const std::string& p) {
        if (!atPunct(p)) fail("expected '" + p + "'");
        next();
    }
    void expectNewline() {
        if (at(Token::Type::End) || atPunct("}")) return;
        if (!at(Token::Type::Newline)) fail("expected end of line");
        next();
    }
    void skipNewlines() {
        while (at(Token::Type::Newline)) next();
    }

    std::string expectIdent(const char* what) {
        if (!at(Token::Type::Ident)) fail(std::string("expected ") + what);
        return next().text;
    }

    Symbol declaredName(const char* what) {
        const Token& t = peek();
        std::string s = expectIdent(what);
        if (s[0] == '#')
            failAt(t.line, t.col, std::string(what) + " '" + s + "' uses a reserved prefix");
        return Symbol(s);
    }

    // '@' marker such as "@init" / "@auto"; tolerates interior whitespace.
    bool atMarker(const char* word) const {
        return atPunct("@") && peek(1).type == Token::Type::Ident && peek(1).text == word;
    }
    void eatMarker() {
        next();
        next();
    }

    double parseNumber(const char* what) {
        bool neg = false;
        if (atPunct("-")) {
            next();
            neg = true;
        }
        if (!at(Token::Type::Number)) fail(std::string("expected ") + what);
        double v = std::strtod(next().text.c_str(), nullptr);
        return neg ? -v : v;
    }

    std::uint64_t parseCount() {
        if (!at(Token::Type::Number)) fail("expected a count");
        const Token& t = peek();
        if (t.text.find('.') != std::string::npos) fail("expected an integer count");
        return std::strtoull(next().text.c_str(), nullptr, 10);
    }

    // ---------------------------------------------------------- kind section
    void parseKind() {
        next(); // kind
        Symbol name = declaredName("kind name");
        if (model_.kinds.count(name)) fail("duplicate kind '" + name.str() + "'");
        Kind kind;
        kind.name = name;
        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            std::string clause = expectIdent("'places' or 'channels'");
            if (clause == "places") {
                while (at(Token::Type::Ident)) kind.placeUniverse.insert(declaredName("place"));
            } else if (clause == "channels") {
                while (at(Token::Type::Ident)) kind.channels.insert(declaredName("channel"));
            } else {
                fail("unknown kind clause '" + clause + "'");
            }
            expectNewline();
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();
        model_.kinds.emplace(name, std::move(kind));
    }

    // ------------------------------------------------------ objectnet section
    void parseObjectNet() {
        const Token& head = peek();
        next(); // objectnet
        Symbol name = declaredName("object net name");
        if (model_.constants.count(name)) fail("duplicate object net '" + name.str() + "'");
        expectPunct(":");
        Symbol kindName = declaredName("kind name");
        auto kit = model_.kinds.find(kindName);
        if (kit == model_.kinds.end()) fail("unknown kind '" + kindName.str() + "'");
        const Kind& kind = kit->second;

        std::set<Symbol> places;
        std::map<Symbol, ObjTransition> transitions;

        auto checkPlace = [&](Symbol p, const Token& where) {
            if (!kind.placeUniverse.count(p))
                failAt(where.line, where.col,
                       "place '" + p.str() + "' is not in the universe of kind '" +
                           kindName.str() + "'");
            places.insert(p);
        };

        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            std::string clause = expectIdent("'places' or 'transition'");
            if (clause == "places") {
                while (at(Token::Type::Ident)) {
                    const Token& t = peek();
                    checkPlace(declaredName("place"), t);
                }
                expectNewline();
            } else if (clause == "transition") {
                Symbol tname = declaredName("transition name");
                if (transitions.count(tname))
                    fail("duplicate transition '" + tname.str() + "'");
                ObjTransition tr;
                expectPunct("{");
                skipNewlines();
                while (!atPunct("}")) {
                    std::string inner = expectIdent("transition clause");
                    if (inner == "pre" || inner == "post") {
                        Multiset<Symbol> ms;
                        while (true) {
                            std::uint64_t n = 1;
                            if (at(Token::Type::Number)) {
                                n = parseCount();
                                expectPunct("*");
                            }
                            const Token& t = peek();
                            Symbol p = declaredName("place");
                            checkPlace(p, t);
                            ms.add(p, n);
                            if (atPunct("+"))
                                next();
                            else
                                break;
                        }
                        (inner == "pre" ? tr.pre : tr.post) = std::move(ms);
                    } else if (inner == "rate") {
                        tr.rate = parseNumber("a rate");
                    } else if (inner == "label") {
                        const Token& t = peek();
                        Symbol ch = declaredName("channel");
                        if (!kind.channels.count(ch))
                            failAt(t.line, t.col,
                                   "channel '" + ch.str() + "' is not declared for kind '" +
                                       kindName.str() + "'");
                        tr.label = ch;
                    } else {
                        fail("unknown transition clause '" + inner + "'");
                    }
                    expectNewline();
                    skipNewlines();
                }
                expectPunct("}");
                expectNewline();
                transitions.emplace(tname, std::move(tr));
            } else {
                fail("unknown objectnet clause '" + clause + "'");
            }
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();

        try {
            ObjectNetRef net = ObjectNet::create(kindName, std::move(places),
                                                 std::move(transitions));
            model_.names->registerNet(*net, name.str());
            model_.constants.emplace(name, std::move(net));
        } catch (const ModelError& e) {
            failAt(head.line, head.col, e.what());
        }
    }

    // --------------------------------------------------------------- terms
    NetTerm parseTerm() {
        NetTerm lhs = parseTermPrimary();
        while (atPunct("||")) {
            next();
            NetTerm rhs = parseTermPrimary();
            lhs = NetTerm::op(Symbol("par"), {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    NetTerm parseTermPrimary() {
        if (atPunct("(")) {
            next();
            NetTerm t = parseTerm();
            expectPunct(")");
            return t;
        }
        const Token& t = peek();
        std::string name = expectIdent("a term");
        if (atPunct("(")) {
            const OpDef* def = OpRegistry::builtins().find(Symbol(name));
            if (!def) failAt(t.line, t.col, "unknown operator '" + name + "'");
            next(); // (
            std::vector<NetTerm> args;
            std::vector<TermParam> params;
            for (std::size_t i = 0; i < def->signature.size(); ++i) {
                if (i > 0) expectPunct(",");
                switch (def->signature[i]) {
                case OpArg::Net:
                    args.push_back(parseTerm());
                    break;
                case OpArg::Num:
                    params.emplace_back(parseNumber("a number"));
                    break;
                case OpArg::Sym:
                    params.emplace_back(Symbol(expectIdent("a transition name")));
                    break;
                }
            }
            expectPunct(")");
            return NetTerm::op(Symbol(name), std::move(args), std::move(params));
        }
        auto cit = model_.constants.find(Symbol(name));
        if (cit != model_.constants.end()) return NetTerm::constant(cit->second);
        if (name[0] == '#' || name[0] == '@')
            failAt(t.line, t.col, "variable '" + name + "' uses a reserved prefix");
        return NetTerm::var(Symbol(name));
    }

    // --------------------------------------------------------------- guards
    Guard parseGuard() { return parseGuardOr(); }

    Guard parseGuardOr() {
        Guard g = parseGuardAnd();
        while (atPunct("||")) {
            next();
            g = Guard::disj(std::move(g), parseGuardAnd());
        }
        return g;
    }

    Guard parseGuardAnd() {
        Guard g = parseGuardNot();
        while (atPunct("&&")) {
            next();
            g = Guard::conj(std::move(g), parseGuardNot());
        }
        return g;
    }

    Guard parseGuardNot() {
        if (atPunct("!")) {
            next();
            return Guard::negate(parseGuardNot());
        }
        return parseGuardPrimary();
    }

    bool atCmpOrArith() const {
        if (peek().type != Token::Type::Punct) return false;
        const std::string& p = peek().text;
        return p == "<" || p == "<=" || p == "=" || p == "==" || p == ">" || p == ">=" ||
               p == "+" || p == "-" || p == "*" || p == "/";
    }

    Guard parseGuardPrimary() {
        if (atIdent("true")) {
            next();
            return Guard::alwaysTrue();
        }
        if (atPunct("(")) {
            // Either a parenthesised boolean or the left side of a
            // comparison; try boolean first and backtrack.
            std::size_t save = pos_;
            next();
            try {
                Guard g = parseGuardOr();
                if (atPunct(")")) {
                    next();
                    if (!atCmpOrArith()) return g;
                }
            } catch (const ParseError&) {
            }
            pos_ = save;
        }
        GuardArith lhs = parseArith();
        Guard::CmpOp op;
        if (atPunct("<")) op = Guard::CmpOp::Lt;
        else if (atPunct("<=")) op = Guard::CmpOp::Le;
        else if (atPunct("=") || atPunct("==")) op = Guard::CmpOp::Eq;
        else if (atPunct(">")) op = Guard::CmpOp::Gt;
        else if (atPunct(">=")) op = Guard::CmpOp::Ge;
        else fail("expected a comparison operator");
        next();
        GuardArith rhs = parseArith();
        return Guard::compare(op, std::move(lhs), std::move(rhs));
    }

    GuardArith parseArith() {
        GuardArith lhs = parseArithTerm();
        while (atPunct("+") || atPunct("-")) {
            bool add = peek().text == "+";
            next();
            lhs = GuardArith::binary(add ? GuardArith::Node::Add : GuardArith::Node::Sub,
                                     std::move(lhs), parseArithTerm());
        }
        return lhs;
    }

    GuardArith parseArithTerm() {
        GuardArith lhs = parseArithFactor();
        while (atPunct("*") || atPunct("/")) {
            bool mul = peek().text == "*";
            next();
            lhs = GuardArith::binary(mul ? GuardArith::Node::Mul : GuardArith::Node::Div,
                                     std::move(lhs), parseArithFactor());
        }
        return lhs;
    }

    GuardArith parseArithFactor() {
        if (atPunct("-")) {
            next();
            return GuardArith::negate(parseArithFactor());
        }
        if (atPunct("(")) {
            next();
            GuardArith a = parseArith();
            expectPunct(")");
            return a;
        }
        if (at(Token::Type::Number)) return GuardArith::literal(ratFromDecimal(next().text));
        if (atIdent("rateOf")) {
            next();
            expectPunct("(");
            Symbol var = declaredName("a variable");
            expectPunct(",");
            Symbol t(expectIdent("a transition name"));
            expectPunct(")");
            return GuardArith::rateOf(var, t);
        }
        fail("expected a number, rateOf(...), or a parenthesised expression");
    }

    // --------------------------------------------------------------- system
    void parseSystem() {
        systemLine_ = peek().line;
        next(); // system
        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            std::string clause = expectIdent("'place' or 'transition'");
            if (clause == "place") {
                Symbol name = declaredName("place name");
                expectPunct(":");
                Symbol kind = declaredName("kind name");
                if (!model_.kinds.count(kind)) fail("unknown kind '" + kind.str() + "'");
                try {
                    model_.system.addPlace(name, kind);
                } catch (const ModelError& e) {
                    fail(e.what());
                }
                expectNewline();
            } else if (clause == "transition") {
                parseSystemTransition();
            } else {
                fail("unknown system clause '" + clause + "'");
            }
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();
    }

    void parseSystemTransition() {
        SysTransition tr;
        tr.name = declaredName("transition name");
        bool mape = false;
        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            std::string clause = expectIdent("transition clause");
            if (clause == "pre" || clause == "post") {
                auto& arcs = clause == "pre" ? tr.pre : tr.post;
                while (true) {
                    const Token& pt = peek();
                    Symbol place = declaredName("place name");
                    if (!model_.system.hasPlace(place))
                        failAt(pt.line, pt.col, "unknown system place '" + place.str() + "'");
                    expectPunct(":");
                    Multiset<NetTerm>& terms = arcs[place];
                    while (true) {
                        std::uint64_t n = 1;
                        if (at(Token::Type::Number)) {
                            n = parseCount();
                            expectPunct("*");
                        }
                        terms.add(parseTerm(), n);
                        if (atPunct("+"))
                            next();
                        else
                            break;
                    }
                    if (atPunct(";"))
                        next();
                    else
                        break;
                }
            } else if (clause == "guard") {
                tr.guard = parseGuard();
            } else if (clause == "sync") {
                while (true) {
                    NetTerm term = parseTerm();
                    expectPunct("@");
                    Symbol ch(expectIdent("a channel"));
                    tr.sync.add(SyncEntry{std::move(term), ch});
                    if (atPunct("+"))
                        next();
                    else
                        break;
                }
            } else if (clause == "rate") {
                if (atIdent("mape")) {
                    next();
                    mape = true;
                    tr.mapeRated = true;
                } else {
                    tr.rate = parseNumber("a rate or 'mape'");
                }
            } else {
                fail("unknown transition clause '" + clause + "'");
            }
            expectNewline();
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();
        Symbol name = tr.name;
        try {
            model_.system.addTransition(std::move(tr));
        } catch (const ModelError& e) {
            fail(e.what());
        }
        mapeMarked_.emplace_back(name, mape);
    }

    // -------------------------------------------------------------- marking
    void parseMarking() {
        next(); // marking
        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            MarkingDecl decl;
            if (at(Token::Type::Number)) {
                decl.count = parseCount();
                expectPunct("*");
            }
            const Token& pt = peek();
            decl.place = declaredName("place name");
            if (!model_.system.hasPlace(decl.place))
                failAt(pt.line, pt.col, "unknown system place '" + decl.place.str() + "'");
            expectPunct(":");
            decl.term = parseTerm();
            expectPunct("{");
            if (atMarker("init")) {
                eatMarker();
                decl.atInit = true;
            } else if (!atPunct("}")) {
                while (true) {
                    std::uint64_t n = 1;
                    if (at(Token::Type::Number)) {
                        n = parseCount();
                        expectPunct("*");
                    }
                    decl.tokens.add(Symbol(expectIdent("an object place")), n);
                    if (atPunct("+"))
                        next();
                    else
                        break;
                }
            }
            expectPunct("}");
            expectNewline();
            model_.markingDecls.push_back(std::move(decl));
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();
    }

    // -------------------------------------------------------------- options
    void parseOptions() {
        next(); // options
        expectPunct("{");
        skipNewlines();
        while (!atPunct("}")) {
            std::string key = expectIdent("an option name");
            if (key == "gamma") {
                model_.options.gamma = parseNumber("a gamma value");
            } else if (key == "pseudorate") {
                model_.options.pseudoRate = parseNumber("a rate");
                if (!(model_.options.pseudoRate > 0.0)) fail("pseudorate must be positive");
            } else if (key == "modecap") {
                model_.options.modeCap = parseCount();
            } else if (key == "maxstates") {
                model_.options.maxStates = parseCount();
            } else if (key == "maxdepth") {
                model_.options.maxDepth = parseCount();
            } else if (key == "print") {
                std::string mode = expectIdent("'rational' or 'float'");
                if (mode == "rational") model_.options.rationalPrint = true;
                else if (mode == "float") model_.options.rationalPrint = false;
                else fail("print mode must be 'rational' or 'float'");
            } else if (key == "modesplit") {
                std::string mode = expectIdent("'uniform'");
                if (mode != "uniform") fail("only the uniform mode-split policy is supported");
                model_.options.modeSplit = mode;
            } else if (key == "eventrate") {
                StochasticOptions::EventRateKey erk;
                if (atMarker("auto")) {
                    eatMarker();
                } else {
                    erk.sysTransition = Symbol(expectIdent("a system transition or @auto"));
                }
                std::map<Symbol, std::uint64_t> pooled;
                expectPunct("[");
                while (!atPunct("]")) {
                    pooled[Symbol(expectIdent("an object transition"))] += 1;
                    if (atPunct(",")) next();
                }
                expectPunct("]");
                erk.objTransitions.assign(pooled.begin(), pooled.end());
                double rate = parseNumber("a rate");
                if (!(rate > 0.0)) fail("event rates must be positive");
                model_.explicitRates[erk] = rate;
            } else {
                fail("unknown option '" + key + "'");
            }
            expectNewline();
            skipNewlines();
        }
        expectPunct("}");
        expectNewline();
    }

    // ----------------------------------------------------------- finalising
    void finalize() {
        try {
            model_.system.validate(model_.kinds, OpRegistry::builtins());
        } catch (const ModelError& e) {
            failAt(systemLine_, 1, e.what());
        }

        for (const auto& [tname, mape] : mapeMarked_) {
            if (!mape) continue;
            try {
                MapeConfig cfg{model_.options.gamma, false};
                model_.system.setRate(
                    tname, mapeRate(model_.system, tname, OpRegistry::builtins(), cfg));
            } catch (const ModelError& e) {
                failAt(systemLine_, 1, e.what());
            }
        }

        for (const MarkingDecl& decl : model_.markingDecls) {
            ObjectNetRef net;
            try {
                net = evalTerm(decl.term, {}, OpRegistry::builtins(), model_.names.get());
            } catch (const EvalError& e) {
                failAt(systemLine_, 1,
                       std::string("cannot evaluate marking term: ") + e.what());
            }
            Symbol placeKind = model_.system.placeKind(decl.place);
            if (net->kind() != placeKind)
                failAt(systemLine_, 1,
                       "net-token of kind '" + net->kind().str() + "' on place '" +
                           decl.place.str() + "' of kind '" + placeKind.str() + "'");

            Multiset<Symbol> tokens = decl.tokens;
            if (decl.atInit) {
                auto src = net->sourcePlace();
                if (!src)
                    failAt(systemLine_, 1,
                           "@init needs a net with a unique source place");
                tokens = Multiset<Symbol>{*src};
            }
            const Kind& kind = model_.kinds.at(placeKind);
            for (const auto& [p, n] : tokens.entries())
                if (!kind.placeUniverse.count(p) && !net->places().count(p))
                    failAt(systemLine_, 1,
                           "object place '" + p.str() + "' is neither in the universe of kind '" +
                               placeKind.str() + "' nor in the net");
            model_.initial.add(Addend{decl.place, std::move(net), std::move(tokens)},
                               decl.count);
        }
    }
};

} // namespace

Model parseModel(std::string_view text, std::string_view filename) {
    return Parser(text, filename).parse();
}

Model loadModelFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseModel(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Pretty printer

std::string Model::toText() const {
    std::ostringstream os;
    for (const auto& [name, kind] : kinds) {
        os << "kind " << name.str() << " {\n  places";
        for (Symbol p : kind.placeUniverse) os << " " << p.str();
        os << "\n";
        if (!kind.channels.empty()) {
            os << "  channels";
            for (Symbol c : kind.channels) os << " " << c.str();
            os << "\n";
        }
        os << "}\n\n";
    }

    for (const auto& [name, net] : constants) {
        os << "objectnet " << name.str() << " : " << net->kind().str() << " {\n";
        std::set<Symbol> arcPlaces;
        for (const auto& [tname, t] : net->transitions()) {
            for (const auto& [p, n] : t.pre.entries()) arcPlaces.insert(p);
            for (const auto& [p, n] : t.post.entries()) arcPlaces.insert(p);
        }
        bool anyIsolated = false;
        for (Symbol p : net->places())
            if (!arcPlaces.count(p)) anyIsolated = true;
        if (anyIsolated) {
            os << "  places";
            for (Symbol p : net->places())
                if (!arcPlaces.count(p)) os << " " << p.str();
            os << "\n";
        }
        for (const auto& [tname, t] : net->transitions()) {
            os << "  transition " << tname.str() << " {\n";
            if (!t.pre.empty()) os << "    pre " << printObjectMarking(t.pre) << "\n";
            if (!t.post.empty()) os << "    post " << printObjectMarking(t.post) << "\n";
            os << "    rate " << formatDouble(t.rate) << "\n";
            if (!t.label.empty()) os << "    label " << t.label.str() << "\n";
            os << "  }\n";
        }
        os << "}\n\n";
    }

    os << "system {\n";
    for (const auto& [name, p] : system.places())
        os << "  place " << name.str() << " : " << p.kind.str() << "\n";
    for (const auto& [name, t] : system.transitions()) {
        os << "  transition " << name.str() << " {\n";
        auto arcLine = [&](const char* kw, const std::map<Symbol, Multiset<NetTerm>>& arcs) {
            if (arcs.empty()) return;
            os << "    " << kw << " ";
            bool firstPlace = true;
            for (const auto& [place, terms] : arcs) {
                if (!firstPlace) os << " ; ";
                firstPlace = false;
                os << place.str() << " : ";
                bool firstTerm = true;
                for (const auto& [term, n] : terms.entries()) {
                    if (!firstTerm) os << " + ";
                    firstTerm = false;
                    if (n > 1) os << n << "*";
                    os << term.print(names.get());
                }
            }
            os << "\n";
        };
        arcLine("pre", t.pre);
        arcLine("post", t.post);
        if (!t.guard.isTrue()) os << "    guard " << t.guard.print() << "\n";
        if (!t.sync.empty()) {
            os << "    sync ";
            bool first = true;
            for (const auto& [entry, n] : t.sync.entries())
                for (std::uint64_t i = 0; i < n; ++i) {
                    if (!first) os << " + ";
                    first = false;
                    os << entry.term.print(names.get()) << " @ " << entry.channel.str();
                }
            os << "\n";
        }
        if (t.mapeRated)
            os << "    rate mape\n";
        else
            os << "    rate " << formatDouble(t.rate) << "\n";
        os << "  }\n";
    }
    os << "}\n\n";

    os << "marking {\n";
    for (const MarkingDecl& decl : markingDecls) {
        os << "  ";
        if (decl.count > 1) os << decl.count << " * ";
        os << decl.place.str() << " : " << decl.term.print(names.get()) << " { ";
        if (decl.atInit)
            os << "@init";
        else if (!decl.tokens.empty())
            os << printObjectMarking(decl.tokens);
        os << " }\n";
    }
    os << "}\n\n";

    os << "options {\n";
    os << "  gamma " << formatDouble(options.gamma) << "\n";
    os << "  pseudorate " << formatDouble(options.pseudoRate) << "\n";
    os << "  modecap " << options.modeCap << "\n";
    os << "  maxstates " << options.maxStates << "\n";
    os << "  maxdepth " << options.maxDepth << "\n";
    os << "  print " << (options.rationalPrint ? "rational" : "float") << "\n";
    os << "  modesplit " << options.modeSplit << "\n";
    for (const auto& [key, rate] : explicitRates) {
        os << "  eventrate " << (key.sysTransition.empty() ? "@auto" : key.sysTransition.str())
           << " [";
        bool first = true;
        for (const auto& [t, n] : key.objTransitions)
            for (std::uint64_t i = 0; i < n; ++i) {
                if (!first) os << ", ";
                first = false;
                os << t.str();
            }
        os << "] " << formatDouble(rate) << "\n";
    }
    os << "}\n";
    return os.str();
}

Digest Model::digest() const {
    Fnv1a h;
    h.update("model{");
    for (const auto& [name, kind] : kinds) {
        h.update("kind:");
        h.update(name.str());
        for (Symbol p : kind.placeUniverse) {
            h.update(",");
            h.update(p.str());
        }
        h.update(";");
        for (Symbol c : kind.channels) {
            h.update(",");
            h.update(c.str());
        }
    }
    for (const auto& [name, net] : constants) {
        h.update("const:");
        h.update(name.str());
        h.update("=");
        h.update(net->canonicalKey());
    }
    h.update(system.encode(true));
    h.update(initial.encode());
    std::ostringstream opts;
    opts << "opts{" << doubleBitsHex(options.gamma) << ";" << doubleBitsHex(options.pseudoRate)
         << ";" << options.modeCap << ";" << options.maxStates << ";" << options.maxDepth << ";"
         << options.rationalPrint << ";" << options.modeSplit << "}";
    h.update(opts.str());
    for (const auto& [key, rate] : explicitRates) {
        h.update("er:");
        h.update(key.sysTransition.str());
        for (const auto& [t, n] : key.objTransitions) {
            h.update(",");
            h.update(t.str());
            h.update(":");
            h.update(std::to_string(n));
        }
        h.update("=");
        h.update(doubleBitsHex(rate));
    }
    h.update("}");
    return h.value();
}

} // namespace hornets
