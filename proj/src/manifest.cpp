#include "slat/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "slat/version.hpp"

namespace slat {

namespace {

nlohmann::ordered_json config_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["primes"] = c.primes;
    j["b"] = c.b;
    j["T"] = c.T;
    j["max_height"] = c.max_height;
    j["metric"] = c.metric;
    j["mod_q"] = c.mod_q;
    j["residues"] = c.residues;
    j["center"] = c.center;
    j["radius"] = c.radius;
    j["samples"] = c.samples;
    j["x_samples"] = c.x_samples;
    j["seed"] = c.seed;
    j["eta"] = c.eta;
    j["kappa"] = c.kappa;
    j["threads"] = c.threads;
    j["calib_radius"] = c.calib_radius;
    j["out_dir"] = c.out_dir;
    j["cache_dir"] = c.cache_dir;
    j["box_x"] = c.box_x;
    j["box_y_min"] = c.box_y_min;
    j["box_y_max"] = c.box_y_max;
    return j;
}

} // namespace

std::string RunConfig::to_json() const { return config_json(*this).dump(2); }

std::string RunConfig::config_hash() const {
    // Thread count and output directory do not affect results.
    nlohmann::ordered_json j = config_json(*this);
    j.erase("threads");
    j.erase("out_dir");
    std::string s = j.dump();
    std::uint64_t hash = 1469598103934665603ULL;
    for (char ch : s) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["verb"] = verb;
    j["version"] = version.empty() ? kVersion : version;
    j["config"] = config_json(config);
    j["config_hash"] = config.config_hash();
    j["haar_kappa"] = haar_kappa;
    j["cache_fingerprints"] = cache_fingerprints;
    j["wall_times"] = wall_times;
    j["summary"] = summary;
    return j.dump(2);
}

void RunManifest::write(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    out << to_json() << "\n";
}

std::string manifest_reference_line(const RunConfig& config) {
    return "manifest.json config_hash=" + config.config_hash();
}

std::string fmt_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace slat
