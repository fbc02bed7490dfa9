#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

namespace hornets {

// Interned identifier. Equality is pointer comparison; ordering is
// lexicographic on the underlying string so that all canonical encodings
// are independent of interning order.
class Symbol {
public:
    Symbol() : str_(emptyString()) {}

    explicit Symbol(std::string_view name) : str_(intern(name)) {}

    const std::string& str() const noexcept { return *str_; }
    bool empty() const noexcept { return str_->empty(); }

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.str_ == b.str_; }

    friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
        if (a.str_ == b.str_) return std::strong_ordering::equal;
        return a.str() <=> b.str();
    }

    friend std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.str(); }

    std::size_t hash() const noexcept { return std::hash<const std::string*>{}(str_); }

private:
    static const std::string* intern(std::string_view name) {
        static std::mutex mu;
        static std::unordered_set<std::string> pool;
        std::lock_guard<std::mutex> lock(mu);
        auto [it, inserted] = pool.emplace(name);
        return &*it;
    }

    static const std::string* emptyString() {
        static const std::string* e = intern("");
        return e;
    }

    const std::string* str_;
};

} // namespace hornets

template <>
struct std::hash<hornets::Symbol> {
    std::size_t operator()(hornets::Symbol s) const noexcept { return s.hash(); }
};
