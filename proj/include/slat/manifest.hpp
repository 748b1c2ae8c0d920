#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace slat {

/// Everything a run needs, fully serializable; a manifest that echoes this
/// reproduces the run bit-for-bit on the same binary (wall times aside).
struct RunConfig {
    std::vector<long long> primes{2};
    double b = 0.4;
    long long T = 128;
    long long max_height = 128;
    std::string metric = "frobenius";
    long long mod_q = 0; // 0 = no congruence condition
    std::string residues = "full";
    std::string center = "1,0;0,1";
    double radius = 0.5;
    long long samples = 1000000;
    int x_samples = 20;
    std::uint64_t seed = 20250809;
    double eta = 0.1;
    double kappa = 0.5; // spectral exponent
    int threads = 0;
    double calib_radius = 50.0;
    std::string out_dir = "out";
    std::string cache_dir;
    // Iwasawa sampling box for Haar-random base points.
    double box_x = 0.25;
    double box_y_min = 0.8;
    double box_y_max = 1.25;

    std::string to_json() const;
    /// Stable hash of the canonical serialization; referenced by every CSV.
    std::string config_hash() const;
};

struct RunManifest {
    std::string verb;
    RunConfig config;
    std::string version;
    double haar_kappa = 0.0;
    std::vector<std::string> cache_fingerprints;
    std::map<std::string, double> wall_times;
    std::map<std::string, std::string> summary;

    std::string to_json() const;
    void write(const std::filesystem::path& path) const;
};

/// "# manifest: <ref>" header line placed at the top of every CSV artifact.
std::string manifest_reference_line(const RunConfig& config);

/// Stable formatting for CSV floats.
std::string fmt_double(double x);

} // namespace slat
