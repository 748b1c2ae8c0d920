#include "slat/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "slat/parallel.hpp"

namespace slat {

namespace {

struct EntryRange {
    std::int64_t lo = 0, hi = -1; // inclusive; empty when lo > hi
    bool contains(std::int64_t v) const { return v >= lo && v <= hi; }
};

struct ShellFrame {
    long long h;
    long long h2;
    EntryRange range[4]; // a b c d ranges for M = h * gamma
    std::vector<long long> shell_primes; // p in S with k_p >= 1
    const RegionE* region;
    const CongruenceCondition* W; // nullptr when absent or full
    std::uint32_t q = 1;
    std::uint32_t h_inv_mod_q = 0;
};

constexpr std::int64_t kEntryGuard = (std::int64_t(1) << 31) - 1;

ShellFrame make_frame(const ShellQuery& q) {
    ShellFrame f;
    f.h = q.h.value;
    if (f.h < 1) throw std::invalid_argument("enumerate_shell: height must be >= 1");
    long long prod = 1;
    bool overflow = false;
    for (auto& [p, k] : q.h.exponents)
        for (int t = 0; t < k; ++t) {
            if (prod > f.h / p) {
                overflow = true;
                break;
            }
            prod *= p;
        }
    if (overflow || prod != f.h)
        throw std::invalid_argument("enumerate_shell: height exponents do not match the value");
    f.h2 = f.h * f.h; // guarded below through the entry guard
    RegionE::Ball ball = q.region.circumscribing();
    double cs[4] = {ball.center.a, ball.center.b, ball.center.c, ball.center.d};
    for (int i = 0; i < 4; ++i) {
        double lo = double(f.h) * (cs[i] - ball.radius);
        double hi = double(f.h) * (cs[i] + ball.radius);
        if (std::abs(lo) > double(kEntryGuard) || std::abs(hi) > double(kEntryGuard))
            throw std::range_error(
                "enumerate_shell: candidate bound h*(|center|+radius) exceeds the integer "
                "guard; use a smaller region or the shell cache");
        f.range[i].lo = static_cast<std::int64_t>(std::floor(lo)) - 1;
        f.range[i].hi = static_cast<std::int64_t>(std::ceil(hi)) + 1;
    }
    for (auto& [p, k] : q.h.exponents)
        if (k >= 1) f.shell_primes.push_back(p);
    f.region = &q.region;
    f.W = nullptr;
    if (q.congruence && !q.congruence->is_full()) {
        q.congruence->require_coprime_to(q.S);
        f.W = &*q.congruence;
        f.q = q.congruence->modulus();
        f.h_inv_mod_q = static_cast<std::uint32_t>(mod_inverse(f.h % f.q, f.q));
    }
    return f;
}

bool passes_filters(const ShellFrame& f, std::int64_t a, std::int64_t b, std::int64_t c,
                    std::int64_t d) {
    // Exact height: for each shell prime, not all entries divisible by p.
    for (long long p : f.shell_primes)
        if (a % p == 0 && b % p == 0 && c % p == 0 && d % p == 0) return false;
    Mat2d g{double(a) / double(f.h), double(b) / double(f.h), double(c) / double(f.h),
            double(d) / double(f.h)};
    if (!f.region->contains(g)) return false;
    if (f.W) {
        ModMat2 m;
        m.q = f.q;
        std::uint64_t inv = f.h_inv_mod_q;
        m.e[0] = std::uint32_t(mod_reduce(a, f.q) * inv % f.q);
        m.e[1] = std::uint32_t(mod_reduce(b, f.q) * inv % f.q);
        m.e[2] = std::uint32_t(mod_reduce(c, f.q) * inv % f.q);
        m.e[3] = std::uint32_t(mod_reduce(d, f.q) * inv % f.q);
        if (!f.W->contains_packed(m.key())) return false;
    }
    return true;
}

/// Divisors of h^2 from the exponent vector (h = prod p^{k_p}).
std::vector<std::int64_t> divisors_of_h2(const RealizableHeight& h) {
    std::vector<std::int64_t> divs{1};
    for (auto& [p, k] : h.exponents) {
        std::size_t base = divs.size();
        std::int64_t pw = 1;
        for (int e = 1; e <= 2 * k; ++e) {
            pw *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
        }
    }
    return divs;
}

void scan_a_value(const ShellFrame& f, std::int64_t a, const std::vector<std::int64_t>& divs,
                  std::vector<std::array<std::int64_t, 4>>& out, std::int64_t& scanned) {
    if (a == 0) {
        // det = -bc = h^2: factor bc over the divisor pairs of h^2.
        for (std::int64_t u : divs)
            for (int sgn = 0; sgn < 2; ++sgn) {
                std::int64_t b = sgn ? -u : u;
                std::int64_t c = -(f.h2 / b);
                if (!f.range[1].contains(b) || !f.range[2].contains(c)) continue;
                for (std::int64_t d = f.range[3].lo; d <= f.range[3].hi; ++d) {
                    ++scanned;
                    if (passes_filters(f, a, b, c, d)) out.push_back({a, b, c, d});
                }
            }
        return;
    }
    for (std::int64_t b = f.range[1].lo; b <= f.range[1].hi; ++b) {
        std::int64_t num = f.h2 + b * f.range[2].lo;
        for (std::int64_t c = f.range[2].lo; c <= f.range[2].hi; ++c, num += b) {
            // d = (h^2 + b c) / a must be integral and in range.
            if (num % a != 0) continue;
            std::int64_t d = num / a;
            if (!f.range[3].contains(d)) continue;
            ++scanned;
            if (passes_filters(f, a, b, c, d)) out.push_back({a, b, c, d});
        }
    }
}

} // namespace

std::string ShellQuery::fingerprint() const {
    std::string s = "v1;S=";
    for (long long p : S.primes) s += std::to_string(p) + ".";
    s += ";h=" + std::to_string(h.value);
    s += ";R=" + region.fingerprint();
    s += ";W=" + (congruence ? congruence->fingerprint() : std::string("none"));
    return s;
}

ShellResult enumerate_shell(const ShellQuery& q, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    ShellFrame f = make_frame(q);
    std::vector<std::int64_t> divs = divisors_of_h2(q.h);

    ShellResult result;
    result.query = q;

    std::int64_t a_lo = f.range[0].lo, a_hi = f.range[0].hi;
    if (a_lo <= a_hi) {
        std::int64_t span = a_hi - a_lo + 1;
        unsigned n_threads = resolve_threads(threads);
        std::size_t n_chunks =
            std::min<std::size_t>(static_cast<std::size_t>(span), std::max(1u, n_threads) * 4);
        std::vector<std::vector<std::array<std::int64_t, 4>>> chunk_points(n_chunks);
        std::vector<std::int64_t> chunk_scanned(n_chunks, 0);
        // Chunks are contiguous sub-ranges of a; merging in chunk order makes
        // the output independent of the worker count.
        run_blocks(n_chunks, threads, [&](std::size_t idx) {
            std::int64_t lo = a_lo + std::int64_t(idx) * span / std::int64_t(n_chunks);
            std::int64_t hi = a_lo + std::int64_t(idx + 1) * span / std::int64_t(n_chunks) - 1;
            for (std::int64_t a = lo; a <= hi; ++a)
                scan_a_value(f, a, divs, chunk_points[idx], chunk_scanned[idx]);
        });
        for (std::size_t i = 0; i < n_chunks; ++i) {
            result.stats.candidates_scanned += chunk_scanned[i];
            for (auto& e : chunk_points[i])
                result.points.push_back(
                    Mat2Q::from_integers(e[0], e[1], e[2], e[3], f.h));
        }
    }
    std::sort(result.points.begin(), result.points.end());
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::map<long long, ShellResult> enumerate_up_to(const PlaceSet& S, long long T,
                                                 const RegionE& region,
                                                 const std::optional<CongruenceCondition>& W,
                                                 int threads, const ShellCache* cache) {
    std::map<long long, ShellResult> out;
    for (const RealizableHeight& h : realizable_heights(S, T)) {
        ShellQuery q{S, h, region, W};
        if (cache) {
            if (auto hit = cache->try_load(q)) {
                out.emplace(h.value, std::move(*hit));
                continue;
            }
        }
        ShellResult r = enumerate_shell(q, threads);
        if (cache) cache->store(r);
        out.emplace(h.value, std::move(r));
    }
    return out;
}

std::int64_t brute_force_recount(const ShellQuery& q) {
    ShellFrame f = make_frame(q);
    double iterations = 1.0;
    for (int i = 0; i < 4; ++i)
        iterations *= double(std::max<std::int64_t>(0, f.range[i].hi - f.range[i].lo + 1));
    if (iterations > 1e9)
        throw std::runtime_error("brute_force_recount: oracle unavailable, four-entry loop "
                                 "would exceed 10^9 iterations");
    std::int64_t count = 0;
    for (std::int64_t a = f.range[0].lo; a <= f.range[0].hi; ++a)
        for (std::int64_t b = f.range[1].lo; b <= f.range[1].hi; ++b)
            for (std::int64_t c = f.range[2].lo; c <= f.range[2].hi; ++c)
                for (std::int64_t d = f.range[3].lo; d <= f.range[3].hi; ++d) {
                    if (a * d - b * c != f.h2) continue;
                    if (passes_filters(f, a, b, c, d)) ++count;
                }
    return count;
}

std::filesystem::path ShellCache::path_for(const ShellQuery& q) const {
    std::string fp = q.fingerprint();
    std::uint64_t hash = 1469598103934665603ULL;
    for (char ch : fp) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "shell_%016llx.txt", static_cast<unsigned long long>(hash));
    return dir / buf;
}

std::optional<ShellResult> ShellCache::try_load(const ShellQuery& q) const {
    std::filesystem::path p = path_for(q);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(header, nullptr, false);
    if (j.is_discarded() || j.value("fingerprint", "") != q.fingerprint()) return std::nullopt;
    ShellResult r;
    r.query = q;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) r.points.push_back(Mat2Q::parse(line));
    if (r.points.size() != j.value("count", std::size_t(0))) return std::nullopt;
    return r;
}

void ShellCache::store(const ShellResult& r) const {
    if (r.points.size() < min_points || dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::filesystem::path p = path_for(r.query);
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        nlohmann::json j;
        j["version"] = 1;
        j["fingerprint"] = r.query.fingerprint();
        j["count"] = r.points.size();
        out << j.dump() << "\n";
        for (const Mat2Q& m : r.points) out << m.serialize() << "\n";
    }
    std::filesystem::rename(tmp, p);
}

} // namespace slat
