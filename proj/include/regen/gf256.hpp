#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace regen::gf {

// GF(2^8), reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D).
inline constexpr unsigned kPoly = 0x11D;

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> exp{};  // doubled so log[a]+log[b] indexes directly
};

constexpr Tables make_tables() {
    Tables t{};
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[i] = static_cast<std::uint8_t>(x);
        t.log[x] = static_cast<std::uint8_t>(i);
        x <<= 1;
        if (x & 0x100u) x ^= kPoly;
    }
    for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
    return t;
}

inline constexpr Tables kTables = make_tables();

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return kTables.exp[kTables.log[a] + kTables.log[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw std::domain_error("gf::inv: zero has no inverse");
    return kTables.exp[255 - kTables.log[a]];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) { return mul(a, inv(b)); }

// Full 64 KiB product table; row pointers make the elimination inner loops a
// single lookup per byte.
using MulTable = std::array<std::array<std::uint8_t, 256>, 256>;

constexpr MulTable make_mul_table() {
    MulTable m{};
    for (int a = 1; a < 256; ++a) {
        for (int b = 1; b < 256; ++b) {
            m[a][b] = kTables.exp[kTables.log[a] + kTables.log[b]];
        }
    }
    return m;
}

inline constexpr MulTable kMul = make_mul_table();

inline const std::uint8_t* mul_row(std::uint8_t c) { return kMul[c].data(); }

}  // namespace regen::gf
