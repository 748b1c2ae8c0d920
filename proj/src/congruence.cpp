#include "slat/congruence.hpp"

#include <algorithm>
#include <numeric>

namespace slat {

std::uint64_t sl2_order_enumerated(std::uint32_t q) {
    require_modulus(q);
    if (q == 1) return 1;
    std::uint64_t n = 0;
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c) {
                // ad - bc = 1 (mod q); count admissible d directly.
                std::uint64_t bc1 = (std::uint64_t(b) * c + 1) % q;
                if (a == 0) {
                    if (bc1 == 0) n += q;
                    continue;
                }
                std::uint32_t g = std::gcd(a, q);
                if (bc1 % g == 0) n += g;
            }
    return n;
}

std::uint64_t sl2_order_formula(std::uint32_t q) {
    require_modulus(q);
    std::uint64_t order = std::uint64_t(q) * q * q;
    std::uint32_t m = q;
    for (std::uint32_t l = 2; std::uint64_t(l) * l <= m; ++l) {
        if (m % l) continue;
        while (m % l == 0) m /= l;
        order = order / (std::uint64_t(l) * l) * (std::uint64_t(l) * l - 1);
    }
    if (m > 1) order = order / (std::uint64_t(m) * m) * (std::uint64_t(m) * m - 1);
    return order;
}

std::uint64_t sl2_order(std::uint32_t q) {
    return q <= 50 ? sl2_order_enumerated(q) : sl2_order_formula(q);
}

std::vector<std::uint64_t> sl2_elements(std::uint32_t q) {
    require_modulus(q);
    std::vector<std::uint64_t> out;
    if (q == 1) {
        out.push_back(ModMat2::identity(1).key());
        return out;
    }
    ModMat2 m;
    m.q = q;
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c)
                for (std::uint32_t d = 0; d < q; ++d) {
                    std::uint64_t det =
                        (std::uint64_t(a) * d % q + q - std::uint64_t(b) * c % q) % q;
                    if (det != 1 % q) continue;
                    m.e = {a, b, c, d};
                    out.push_back(m.key());
                }
    return out;
}

CongruenceCondition CongruenceCondition::full() { return CongruenceCondition(); }

CongruenceCondition CongruenceCondition::identity_mod(std::uint32_t q) {
    require_modulus(q);
    CongruenceCondition w;
    w.q_ = q;
    w.full_ = (q == 1);
    if (!w.full_) w.residues_.insert(ModMat2::identity(q).key());
    return w;
}

CongruenceCondition CongruenceCondition::upper_triangular_mod(std::uint32_t q) {
    require_modulus(q);
    CongruenceCondition w;
    w.q_ = q;
    w.full_ = (q == 1);
    if (w.full_) return w;
    ModMat2 m;
    m.q = q;
    for (std::uint32_t a = 0; a < q; ++a) {
        std::int64_t inv;
        try {
            inv = mod_inverse(a, q);
        } catch (const std::domain_error&) {
            continue;
        }
        for (std::uint32_t b = 0; b < q; ++b) {
            m.e = {a, b, 0, std::uint32_t(inv)};
            w.residues_.insert(m.key());
        }
    }
    return w;
}

CongruenceCondition CongruenceCondition::from_residues(std::uint32_t q,
                                                       const std::vector<ModMat2>& set) {
    require_modulus(q);
    if (set.empty()) throw std::invalid_argument("CongruenceCondition: empty residue set");
    CongruenceCondition w;
    w.q_ = q;
    w.full_ = false;
    for (const ModMat2& m : set) {
        if (m.q != q) throw std::invalid_argument("CongruenceCondition: modulus mismatch");
        if (m.det() != 1 % q)
            throw std::invalid_argument("CongruenceCondition: residue " + m.to_string() +
                                        " has det != 1 mod " + std::to_string(q));
        w.residues_.insert(m.key());
    }
    if (q == 1 || w.residues_.size() == sl2_order(q)) w.full_ = true;
    return w;
}

std::size_t CongruenceCondition::residue_count() const {
    if (full_) return static_cast<std::size_t>(sl2_order(q_));
    return residues_.size();
}

Rational CongruenceCondition::measure() const {
    if (full_) return Rational(1);
    return Rational(BigInt(residues_.size()), BigInt(sl2_order(q_)));
}

bool CongruenceCondition::contains(const ModMat2& m) const {
    if (full_) return true;
    if (m.q != q_) throw std::invalid_argument("CongruenceCondition::contains: modulus mismatch");
    return residues_.count(m.key()) > 0;
}

bool CongruenceCondition::contains(const Mat2Q& gamma) const {
    if (full_) return true;
    return contains(reduce_mod(gamma, q_));
}

bool CongruenceCondition::contains_packed(std::uint64_t key) const {
    return full_ || residues_.count(key) > 0;
}

void CongruenceCondition::require_coprime_to(const PlaceSet& S) const {
    if (full_ && q_ == 1) return;
    if (!S.coprime_to(q_))
        throw std::invalid_argument("congruence modulus " + std::to_string(q_) +
                                    " shares a factor with the place set");
}

std::string CongruenceCondition::fingerprint() const {
    if (full_) return "full";
    std::vector<std::uint64_t> keys(residues_.begin(), residues_.end());
    std::sort(keys.begin(), keys.end());
    // FNV-1a over the sorted keys.
    std::uint64_t hash = 1469598103934665603ULL;
    auto mix = [&hash](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            hash ^= (x >> (8 * i)) & 0xff;
            hash *= 1099511628211ULL;
        }
    };
    mix(q_);
    for (std::uint64_t k : keys) mix(k);
    char buf[32];
    std::snprintf(buf, sizeof buf, "q%u-%016llx", q_, static_cast<unsigned long long>(hash));
    return buf;
}

bool CongruenceCondition::subset_of(const CongruenceCondition& o) const {
    if (o.full_) return true;
    if (full_) return false;
    if (q_ != o.q_) throw std::invalid_argument("subset_of: modulus mismatch");
    for (std::uint64_t k : residues_)
        if (!o.residues_.count(k)) return false;
    return true;
}

Rational congruence_measure(const CongruenceCondition& W) { return W.measure(); }

} // namespace slat
