#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace hornets {

using Digest = std::uint64_t;

// 64-bit FNV-1a over the canonical text encodings. The parameters are
// fixed so external tools can reproduce every identity this engine uses.
class Fnv1a {
public:
    static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ull;
    static constexpr std::uint64_t kPrime = 0x100000001b3ull;

    void update(std::string_view bytes) noexcept {
        for (unsigned char c : bytes) {
            h_ ^= c;
            h_ *= kPrime;
        }
    }

    Digest value() const noexcept { return h_; }

private:
    std::uint64_t h_ = kOffsetBasis;
};

inline Digest fnv1a(std::string_view bytes) noexcept {
    Fnv1a h;
    h.update(bytes);
    return h.value();
}

inline std::string hexDigest(Digest d) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[d & 0xf];
        d >>= 4;
    }
    return out;
}

inline std::string shortHexDigest(Digest d) { return hexDigest(d).substr(0, 8); }

// Exact identity encoding of a double: big-endian IEEE-754 bit pattern.
inline std::string doubleBitsHex(double x) {
    return hexDigest(std::bit_cast<std::uint64_t>(x));
}

} // namespace hornets
