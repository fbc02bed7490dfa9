#include "hornets/nested_marking.hpp"

#include <sstream>

namespace hornets {

Multiset<Symbol> NestedMarking::proj1(const ObjectNet& net) const {
    Multiset<Symbol> out;
    for (const auto& [a, n] : addends_.entries())
        if (a.net->equals(net)) out.add(a.place, n);
    return out;
}

Multiset<Symbol> NestedMarking::proj2Net(const ObjectNet& net) const {
    Multiset<Symbol> out;
    for (const auto& [a, n] : addends_.entries())
        if (a.net->equals(net)) out += a.marking.times(n);
    return out;
}

Multiset<Symbol> NestedMarking::proj2Kind(Symbol kind) const {
    Multiset<Symbol> out;
    for (const auto& [a, n] : addends_.entries())
        if (a.net->kind() == kind) out += a.marking.times(n);
    return out;
}

std::string NestedMarking::encode() const {
    std::ostringstream os;
    os << "mu{";
    bool first = true;
    for (const auto& [a, n] : addends_.entries()) {
        if (!first) os << ";";
        first = false;
        os << a.place.str() << "*" << n << "[" << hexDigest(a.net->digest()) << ",";
        bool f2 = true;
        for (const auto& [p, c] : a.marking.entries()) {
            if (!f2) os << "+";
            f2 = false;
            os << p.str() << ":" << c;
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

std::string printObjectMarking(const Multiset<Symbol>& m) {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, n] : m.entries()) {
        if (!first) os << " + ";
        first = false;
        if (n > 1) os << n << "*";
        os << p.str();
    }
    return os.str();
}

std::string NestedMarking::print(const NameTable* names) const {
    if (addends_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, n] : addends_.entries()) {
        if (!first) os << " + ";
        first = false;
        if (n > 1) os << n << "*";
        os << a.place.str() << "[" << displayName(names, *a.net) << ", "
           << printObjectMarking(a.marking) << "]";
    }
    return os.str();
}

} // namespace hornets
