#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "hornets/errors.hpp"

namespace hornets {

// Exact arithmetic backing all probability computations. Every finite
// double is a dyadic rational, so converting model rates is lossless.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat ratFromDouble(double x) {
    if (!std::isfinite(x)) throw EvalError("non-finite value in exact arithmetic");
    return Rat(x);
}

inline double ratToDouble(const Rat& r) { return r.convert_to<double>(); }

// Parses a plain decimal literal ("73", "0.8", "-1.25") exactly.
inline Rat ratFromDecimal(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    BigInt mantissa = 0;
    BigInt scale = 1;
    bool sawDigit = false, sawDot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (sawDot) throw EvalError("malformed decimal literal: " + std::string(text));
            sawDot = true;
        } else if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (sawDot) scale *= 10;
            sawDigit = true;
        } else {
            throw EvalError("malformed decimal literal: " + std::string(text));
        }
    }
    if (!sawDigit) throw EvalError("malformed decimal literal: " + std::string(text));
    Rat r(mantissa, scale);
    return neg ? Rat(-r) : r;
}

inline std::string ratToString(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat ratPow(const Rat& base, std::uint64_t exp) {
    Rat result(1);
    Rat b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

} // namespace hornets
