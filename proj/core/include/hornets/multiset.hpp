#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>

#include "hornets/errors.hpp"

namespace hornets {

// Finite multiset in canonical sparse form: no entry carries count zero,
// iteration order follows T's ordering. Counts are checked, never wrapped.
template <typename T>
class Multiset {
public:
    using Count = std::uint64_t;
    using Map = std::map<T, Count>;
    using const_iterator = typename Map::const_iterator;

    Multiset() = default;

    Multiset(std::initializer_list<T> xs) {
        for (const T& x : xs) add(x);
    }

    static Multiset ofCounts(std::initializer_list<std::pair<T, Count>> xs) {
        Multiset m;
        for (const auto& [x, n] : xs) m.add(x, n);
        return m;
    }

    void add(const T& x, Count n = 1) {
        if (n == 0) return;
        Count& c = entries_[x];
        if (c > std::numeric_limits<Count>::max() - n)
            throw OverflowError("multiset count overflow");
        c += n;
    }

    Count count(const T& x) const noexcept {
        auto it = entries_.find(x);
        return it == entries_.end() ? 0 : it->second;
    }

    bool contains(const T& x) const noexcept { return entries_.count(x) > 0; }

    Count cardinality() const {
        Count total = 0;
        for (const auto& [x, n] : entries_) {
            if (total > std::numeric_limits<Count>::max() - n)
                throw OverflowError("multiset cardinality overflow");
            total += n;
        }
        return total;
    }

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t distinct() const noexcept { return entries_.size(); }

    Multiset& operator+=(const Multiset& other) {
        for (const auto& [x, n] : other.entries_) add(x, n);
        return *this;
    }

    friend Multiset operator+(Multiset a, const Multiset& b) {
        a += b;
        return a;
    }

    // Truncated difference: counts never go below zero.
    friend Multiset operator-(const Multiset& a, const Multiset& b) {
        Multiset out = a;
        for (const auto& [x, n] : b.entries_) {
            auto it = out.entries_.find(x);
            if (it == out.entries_.end()) continue;
            if (it->second <= n)
                out.entries_.erase(it);
            else
                it->second -= n;
        }
        return out;
    }

    Multiset times(Count k) const {
        Multiset out;
        if (k == 0) return out;
        for (const auto& [x, n] : entries_) {
            if (n > std::numeric_limits<Count>::max() / k)
                throw OverflowError("multiset scalar overflow");
            out.entries_.emplace(x, n * k);
        }
        return out;
    }

    // a.leq(b) iff there is m with b = a + m.
    bool leq(const Multiset& b) const noexcept {
        for (const auto& [x, n] : entries_)
            if (b.count(x) < n) return false;
        return true;
    }

    bool operator==(const Multiset&) const = default;
    auto operator<=>(const Multiset&) const = default;

    const Map& entries() const noexcept { return entries_; }
    const_iterator begin() const noexcept { return entries_.begin(); }
    const_iterator end() const noexcept { return entries_.end(); }

private:
    Map entries_;
};

// Multiset extension f#: sums f(x) with multiplicity over the argument.
template <typename U, typename T, typename F>
Multiset<U> liftSum(const Multiset<T>& ms, F&& f) {
    Multiset<U> out;
    for (const auto& [x, n] : ms.entries()) out += f(x).times(n);
    return out;
}

} // namespace hornets
