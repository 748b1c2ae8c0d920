#pragma once

#include <filesystem>
#include <map>
#include <optional>

#include "slat/congruence.hpp"
#include "slat/heights.hpp"
#include "slat/region.hpp"

namespace slat {

/// One shell query: all points of Gamma_S with height exactly h inside a
/// bounded region and congruence class.
struct ShellQuery {
    PlaceSet S;
    RealizableHeight h;
    RegionE region;
    std::optional<CongruenceCondition> congruence;

    std::string fingerprint() const;
};

struct ShellStats {
    std::int64_t candidates_scanned = 0; // integer candidates that passed the solve
    double wall_seconds = 0.0;
};

struct ShellResult {
    ShellQuery query;
    std::vector<Mat2Q> points; // sorted canonically, duplicate free
    ShellStats stats;
};

/// On-disk shell cache: header JSON line (fingerprint, version, count)
/// followed by one serialized matrix per line.
struct ShellCache {
    std::filesystem::path dir;
    std::size_t min_points = 512; // smaller results are not worth a file

    std::optional<ShellResult> try_load(const ShellQuery& q) const;
    void store(const ShellResult& r) const;
    std::filesystem::path path_for(const ShellQuery& q) const;
};

/// Exhaustive, duplicate-free enumeration of the shell. Writes every
/// gamma = M/h with M integral, det M = h^2, entries bounded through the
/// region's circumscribing Frobenius ball, and for each p in S with
/// k_p >= 1 not all entries of M divisible by p; then filters by the exact
/// region test and the congruence class. Throws std::range_error when the
/// integer candidate bounds leave the int32 guard.
ShellResult enumerate_shell(const ShellQuery& q, int threads = 0);

/// One ShellResult per realizable height <= T; the union is exactly
/// R_S(T) intersected with (region x congruence).
std::map<long long, ShellResult> enumerate_up_to(const PlaceSet& S, long long T,
                                                 const RegionE& region,
                                                 const std::optional<CongruenceCondition>& W,
                                                 int threads = 0,
                                                 const ShellCache* cache = nullptr);

/// Independent recount oracle: full loop over all four entries with a
/// determinant test instead of the solve. Throws std::runtime_error when
/// the loop would exceed 10^9 iterations (oracle unavailable).
std::int64_t brute_force_recount(const ShellQuery& q);

} // namespace slat
