#include "slat/modmat.hpp"

namespace slat {

ModMat2 ModMat2::identity(std::uint32_t q) {
    ModMat2 m;
    m.q = q;
    m.e = {1 % q, 0, 0, 1 % q};
    return m;
}

ModMat2 ModMat2::operator*(const ModMat2& o) const {
    if (q != o.q) throw std::invalid_argument("ModMat2: modulus mismatch");
    auto mul = [this](std::uint32_t x, std::uint32_t y) {
        return std::uint32_t(std::uint64_t(x) * y % q);
    };
    ModMat2 r;
    r.q = q;
    r.e[0] = (mul(e[0], o.e[0]) + mul(e[1], o.e[2])) % q;
    r.e[1] = (mul(e[0], o.e[1]) + mul(e[1], o.e[3])) % q;
    r.e[2] = (mul(e[2], o.e[0]) + mul(e[3], o.e[2])) % q;
    r.e[3] = (mul(e[2], o.e[1]) + mul(e[3], o.e[3])) % q;
    return r;
}

std::string ModMat2::to_string() const {
    return std::to_string(e[0]) + "," + std::to_string(e[1]) + ";" + std::to_string(e[2]) +
           "," + std::to_string(e[3]);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
    std::int64_t r0 = q, r1 = ((a % q) + q) % q;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t qt = r0 / r1;
        std::int64_t r2 = r0 - qt * r1;
        std::int64_t t2 = t0 - qt * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: not invertible mod " + std::to_string(q));
    return ((t0 % q) + q) % q;
}

void require_modulus(std::int64_t q) {
    if (q < 1 || q > 0xffff)
        throw std::invalid_argument("modulus must be in [1, 65535], got " + std::to_string(q));
}

} // namespace slat
