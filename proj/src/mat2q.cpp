#include "slat/mat2q.hpp"

#include <sstream>

namespace slat {

Mat2Q Mat2Q::from_integers(long long a, long long b, long long c, long long d, long long h) {
    if (h <= 0) throw std::invalid_argument("Mat2Q::from_integers: h must be positive");
    BigInt hh(h);
    return Mat2Q(Rational(BigInt(a), hh), Rational(BigInt(b), hh), Rational(BigInt(c), hh),
                 Rational(BigInt(d), hh));
}

Rational Mat2Q::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

Mat2Q Mat2Q::operator*(const Mat2Q& o) const {
    return Mat2Q(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                 e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
}

Mat2Q Mat2Q::inverse_unimodular() const {
    if (det() != Rational(1)) throw std::domain_error("inverse_unimodular: det != 1");
    return Mat2Q(e_[3], -e_[1], -e_[2], e_[0]);
}

bool Mat2Q::operator<(const Mat2Q& o) const {
    for (int i = 0; i < 4; ++i) {
        if (e_[i] < o.e_[i]) return true;
        if (o.e_[i] < e_[i]) return false;
    }
    return false;
}

std::string Mat2Q::serialize() const {
    return e_[0].to_string() + "," + e_[1].to_string() + ";" + e_[2].to_string() + "," +
           e_[3].to_string();
}

Mat2Q Mat2Q::parse(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("Mat2Q::parse: missing ';'");
    std::string rows[2] = {s.substr(0, semi), s.substr(semi + 1)};
    Rational ent[4];
    for (int i = 0; i < 2; ++i) {
        auto comma = rows[i].find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("Mat2Q::parse: row without ','");
        ent[2 * i] = Rational::parse(rows[i].substr(0, comma));
        ent[2 * i + 1] = Rational::parse(rows[i].substr(comma + 1));
    }
    return Mat2Q(ent[0], ent[1], ent[2], ent[3]);
}

Valuation padic_min_valuation(const Mat2Q& m, long long p) {
    require_prime(p);
    Valuation best = Valuation::infinity();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Valuation v = padic_valuation(m.at(i, j), p);
            if (v.infinite) continue;
            if (best.infinite || v.v < best.v) best = v;
        }
    return best;
}

Rational padic_norm_matrix(const Mat2Q& m, long long p) {
    Valuation v = padic_min_valuation(m, p);
    if (v.infinite) return Rational(0);
    if (v.v <= 0) return Rational(big_pow(p, static_cast<unsigned long>(-v.v)), BigInt(1));
    return Rational(BigInt(1), big_pow(p, static_cast<unsigned long>(v.v)));
}

ModMat2 reduce_mod(const Mat2Q& m, std::int64_t q) {
    require_modulus(q);
    ModMat2 r;
    r.q = static_cast<std::uint32_t>(q);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Rational& x = m.at(i, j);
            std::int64_t den = (x.den() % q).convert_to<std::int64_t>();
            std::int64_t num = (x.num() % q).convert_to<std::int64_t>();
            std::int64_t inv;
            try {
                inv = mod_inverse(den, q);
            } catch (const std::domain_error&) {
                throw std::domain_error("reduce_mod: denominator of entry (" +
                                        std::to_string(i) + "," + std::to_string(j) +
                                        ") = " + x.to_string() + " is not invertible mod " +
                                        std::to_string(q));
            }
            r.e[2 * i + j] = mod_reduce(num * inv % q, r.q);
        }
    return r;
}

} // namespace slat
