#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace slat {

/// 2x2 matrix over Z/q, entries in [0, q). q is limited to 16 bits so a
/// matrix packs into one uint64 key for set membership.
struct ModMat2 {
    std::uint32_t q = 1;
    std::array<std::uint32_t, 4> e{0, 0, 0, 0}; // row major: a b ; c d

    static ModMat2 identity(std::uint32_t q);

    std::uint64_t key() const {
        return (std::uint64_t(e[0]) << 48) | (std::uint64_t(e[1]) << 32) |
               (std::uint64_t(e[2]) << 16) | std::uint64_t(e[3]);
    }

    std::uint32_t det() const {
        std::uint64_t ad = std::uint64_t(e[0]) * e[3] % q;
        std::uint64_t bc = std::uint64_t(e[1]) * e[2] % q;
        return std::uint32_t((ad + q - bc) % q);
    }

    ModMat2 operator*(const ModMat2& o) const;
    bool operator==(const ModMat2& o) const { return q == o.q && e == o.e; }

    std::string to_string() const;
};

/// Inverse of a mod q; throws std::domain_error if gcd(a, q) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t q);

inline std::uint32_t mod_reduce(std::int64_t x, std::uint32_t q) {
    std::int64_t r = x % static_cast<std::int64_t>(q);
    if (r < 0) r += q;
    return static_cast<std::uint32_t>(r);
}

void require_modulus(std::int64_t q);

} // namespace slat
