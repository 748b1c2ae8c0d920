// Command-line laboratory for S-integral points of SL2: exact p-adic
// volumes, calibrated archimedean volumes, shell enumeration, and the
// counting/discrepancy experiments. Every run writes a JSON manifest and
// CSV artifacts that reference it.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "slat/csv_out.hpp"
#include "slat/experiments.hpp"
#include "slat/manifest.hpp"
#include "slat/version.hpp"

using namespace slat;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

PlaceSet place_set_from(const RunConfig& cfg) { return PlaceSet(cfg.primes, cfg.kappa); }

CongruenceCondition congruence_from(const RunConfig& cfg, const PlaceSet& S) {
    if (cfg.mod_q <= 1 || cfg.residues == "full") return CongruenceCondition::full();
    require_modulus(cfg.mod_q);
    auto q = static_cast<std::uint32_t>(cfg.mod_q);
    CongruenceCondition W = CongruenceCondition::full();
    if (cfg.residues == "identity") {
        W = CongruenceCondition::identity_mod(q);
    } else if (cfg.residues == "upper_triangular") {
        W = CongruenceCondition::upper_triangular_mod(q);
    } else {
        // explicit residue list "a,b;c,d|a,b;c,d|..."
        std::vector<ModMat2> set;
        std::stringstream ss(cfg.residues);
        std::string item;
        while (std::getline(ss, item, '|')) {
            Mat2d m = Mat2d::parse(item);
            ModMat2 r;
            r.q = q;
            r.e = {mod_reduce(std::llround(m.a), r.q), mod_reduce(std::llround(m.b), r.q),
                   mod_reduce(std::llround(m.c), r.q), mod_reduce(std::llround(m.d), r.q)};
            set.push_back(r);
        }
        W = CongruenceCondition::from_residues(q, set);
    }
    W.require_coprime_to(S);
    return W;
}

IwasawaBox box_from(const RunConfig& cfg) {
    return IwasawaBox{-cfg.box_x, cfg.box_x, cfg.box_y_min, cfg.box_y_max};
}

RealPoint center_point(const RunConfig& cfg) { return RealPoint(Mat2d::parse(cfg.center)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct Lab {
    RunConfig cfg;
    RunManifest manifest;
    Timer timer;

    explicit Lab(std::string verb, const RunConfig& c) : cfg(c) {
        manifest.verb = std::move(verb);
        manifest.config = cfg;
        manifest.version = kVersion;
    }

    HaarCalibration calibrate(bool crosscheck = true) {
        Timer t;
        HaarCalibration cal;
        if (crosscheck) {
            CalibrationOptions opts;
            opts.radius = cfg.calib_radius;
            opts.samples = cfg.samples;
            opts.seed = cfg.seed;
            opts.threads = cfg.threads;
            cal = calibrate_haar(opts);
        } else {
            cal.kappa = covolume_one_kappa();
        }
        manifest.haar_kappa = cal.kappa;
        manifest.wall_times["calibrate"] = t.seconds();
        return cal;
    }

    ArchVolumeTable build_table(const HaarCalibration& cal, MetricChoice metric, double r_min,
                                double r_max) {
        Timer t;
        ArchVolumeTable::BuildOptions opts;
        opts.r_min = r_min;
        opts.r_max = r_max;
        opts.samples_per_point = cfg.samples;
        opts.seed = cfg.seed;
        opts.threads = cfg.threads;
        ArchVolumeTable table = ArchVolumeTable::build(metric, cal, opts);
        manifest.cache_fingerprints.push_back("volume_table:" + table.fingerprint());
        manifest.wall_times["volume_table"] = t.seconds();
        return table;
    }

    int finish(const std::map<std::string, std::string>& summary = {}) {
        manifest.summary = summary;
        manifest.wall_times["total"] = timer.seconds();
        std::filesystem::path dir(cfg.out_dir);
        manifest.write(dir / "manifest.json");
        return 0;
    }

    std::string ref() const { return manifest_reference_line(cfg); }
    std::filesystem::path out(const std::string& name) const {
        return std::filesystem::path(cfg.out_dir) / name;
    }
};

int cmd_calibrate(const RunConfig& cfg) {
    Lab lab("calibrate", cfg);
    HaarCalibration cal = lab.calibrate();
    nlohmann::ordered_json j;
    j["kappa"] = cal.kappa;
    j["crosscheck_ratio"] = cal.crosscheck_ratio;
    j["crosscheck_radius"] = cal.crosscheck_radius;
    j["crosscheck_count"] = cal.crosscheck_count;
    j["crosscheck_volume"] = cal.crosscheck_volume;
    j["crosscheck_stderr"] = cal.crosscheck_stderr;
    j["samples"] = cal.samples;
    j["seed"] = cal.seed;
    std::cout << j.dump(2) << "\n";
    write_text(lab.out("calibration.json"), j.dump(2) + "\n");
    return lab.finish({{"kappa", std::to_string(cal.kappa)},
                       {"ratio", std::to_string(cal.crosscheck_ratio)}});
}

int cmd_volumes(const RunConfig& cfg) {
    Lab lab("volumes", cfg);
    PlaceSet S = place_set_from(cfg);
    SphereVolumeTable table(S, cfg.max_height);
    std::string csv = volumes_csv(table, lab.ref());
    std::cout << csv;
    write_text(lab.out("volumes.csv"), csv);
    return lab.finish({{"rows", std::to_string(table.rows().size())}});
}

int cmd_enumerate(const RunConfig& cfg) {
    Lab lab("enumerate", cfg);
    PlaceSet S = place_set_from(cfg);
    auto W = congruence_from(cfg, S);
    RealizableHeight h;
    bool found = false;
    for (const auto& r : realizable_heights(S, cfg.T))
        if (r.value == cfg.T) {
            h = r;
            found = true;
        }
    if (!found) throw std::invalid_argument("height T is not realizable over the place set");
    RegionE region = RegionE::ball(Mat2d::parse(cfg.center), cfg.radius,
                                   parse_metric(cfg.metric));
    ShellQuery query{S, h, region,
                     W.is_full() ? std::nullopt : std::optional<CongruenceCondition>(W)};
    ShellResult result = enumerate_shell(query, cfg.threads);

    std::ostringstream body;
    nlohmann::json header;
    header["version"] = 1;
    header["fingerprint"] = query.fingerprint();
    header["count"] = result.points.size();
    body << header.dump() << "\n";
    for (const Mat2Q& m : result.points) body << m.serialize() << "\n";
    std::cout << body.str();
    write_text(lab.out("shell.txt"), body.str());
    return lab.finish({{"points", std::to_string(result.points.size())},
                       {"candidates", std::to_string(result.stats.candidates_scanned)}});
}

int cmd_count(const RunConfig& cfg) {
    Lab lab("count", cfg);
    PlaceSet S = place_set_from(cfg);
    HaarCalibration cal = lab.calibrate(false);
    ApproximationParams params;
    params.b = cfg.b;
    params.T = cfg.T;
    params.metric = parse_metric(cfg.metric);
    params.spectral_kappa = cfg.kappa;
    params.eta = cfg.eta;
    double r_min = std::min(0.9 * std::pow(double(cfg.T), -cfg.b), 0.01);
    ArchVolumeTable table = lab.build_table(cal, params.metric, r_min, 1.0);
    SchmidtResult res = count_NT(center_point(cfg), params, S, table, cfg.threads);
    std::string csv = schmidt_csv(res, lab.ref());
    std::cout << csv;
    write_text(lab.out("schmidt.csv"), csv);
    return lab.finish({{"N_final", std::to_string(res.rows.empty() ? 0 : res.rows.back().N)},
                       {"fitted_theta", std::to_string(res.fitted_theta)}});
}

int cmd_schmidt(const RunConfig& cfg) {
    Lab lab("schmidt", cfg);
    PlaceSet S = place_set_from(cfg);
    HaarCalibration cal = lab.calibrate(false);
    ApproximationParams params;
    params.b = cfg.b;
    params.T = cfg.T;
    params.metric = parse_metric(cfg.metric);
    params.spectral_kappa = cfg.kappa;
    params.eta = cfg.eta;
    double r_min = std::min(0.9 * std::pow(double(cfg.T), -cfg.b), 0.01);
    ArchVolumeTable table = lab.build_table(cal, params.metric, r_min, 1.0);
    SchmidtSweep sweep =
        schmidt_sweep(params, S, table, box_from(cfg), cfg.x_samples, cfg.seed, cfg.threads);
    std::string csv = schmidt_csv(sweep, lab.ref());
    std::cout << csv;
    write_text(lab.out("schmidt.csv"), csv);
    double b0 = predicted_b0(params.a_exponent, params.spectral_kappa, params.dim_d);
    std::string theta0 =
        params.b < b0 ? std::to_string(predicted_theta0(params.a_exponent,
                                                        params.spectral_kappa, params.dim_d,
                                                        params.b))
                      : "out_of_proven_range";
    return lab.finish({{"samples", std::to_string(cfg.x_samples)},
                       {"share_in_0.7_1.3", std::to_string(sweep.share_within(0.7, 1.3))},
                       {"median_slope", std::to_string(sweep.median_slope)},
                       {"predicted_theta0", theta0}});
}

int cmd_discrepancy(const RunConfig& cfg, const std::string& regime) {
    Lab lab("discrepancy", cfg);
    PlaceSet S = place_set_from(cfg);
    auto W = congruence_from(cfg, S);
    HaarCalibration cal = lab.calibrate(false);
    ApproximationParams params;
    params.spectral_kappa = cfg.kappa;
    params.eta = cfg.eta;
    params.metric = parse_metric(cfg.metric);
    ArchVolumeTable table = lab.build_table(cal, params.metric, 0.01, 1.0);
    ExperimentContext ctx{S, cal, &table, cfg.threads, cfg.samples};

    std::vector<long long> heights;
    for (const auto& h : realizable_heights(S, cfg.T)) heights.push_back(h.value);

    std::vector<DiscrepancyRecord> records;
    RegionE E = RegionE::ball(Mat2d::identity(), cfg.radius, params.metric);
    if (regime == "almost_sure") {
        records = almost_sure_trajectory(center_point(cfg), E, W, heights, params, ctx);
    } else {
        for (long long h : heights) {
            double rms = mean_square_discrepancy(h, E, W, ctx, box_from(cfg), cfg.x_samples,
                                                 derive_seed(cfg.seed, 8, std::uint64_t(h)));
            DiscrepancyRecord rec;
            rec.h = h;
            rec.v_S = big_to_double(ball_volume_padic(S, h));
            rec.main_term = region_volume(E, ctx, cfg.seed) * W.measure().to_double();
            rec.D = rms;
            rec.regime = "mean_square";
            rec.seed = cfg.seed;
            rec.envelope = std::pow(rec.v_S, -params.spectral_kappa + params.eta);
            records.push_back(rec);
        }
    }
    std::string csv = discrepancy_csv(records, lab.ref());
    std::cout << csv;
    write_text(lab.out("discrepancy.csv"), csv);
    return lab.finish({{"rows", std::to_string(records.size())}, {"regime", regime}});
}

int cmd_sweep(const RunConfig& cfg, const std::string& radii) {
    Lab lab("sweep", cfg);
    PlaceSet S = place_set_from(cfg);
    auto W = congruence_from(cfg, S);
    HaarCalibration cal = lab.calibrate(false);
    ApproximationParams params;
    params.spectral_kappa = cfg.kappa;
    params.eta = cfg.eta;
    params.metric = parse_metric(cfg.metric);
    ArchVolumeTable table = lab.build_table(cal, params.metric, 0.01, 1.0);
    ExperimentContext ctx{S, cal, &table, cfg.threads, cfg.samples};

    std::vector<double> ells;
    std::stringstream ss(radii);
    std::string item;
    while (std::getline(ss, item, ',')) ells.push_back(std::stod(item));

    std::vector<RealPoint> xs;
    IwasawaBox Q = box_from(cfg);
    for (int i = 0; i < cfg.x_samples; ++i) {
        Rng rng(derive_seed(cfg.seed, 0x5c4dULL, std::uint64_t(i)));
        xs.emplace_back(Q.sample(rng));
    }
    auto entries = uniform_discrepancy_sweep(xs, ells, W, cfg.T, params, ctx);
    std::vector<DiscrepancyRecord> records;
    for (auto& e : entries) records.push_back(e.record);
    std::string csv = discrepancy_csv(records, lab.ref());
    std::cout << csv;
    write_text(lab.out("discrepancy.csv"), csv);
    int inadmissible = 0;
    for (auto& e : entries)
        if (!e.record.admissible) ++inadmissible;
    return lab.finish({{"rows", std::to_string(records.size())},
                       {"inadmissible", std::to_string(inadmissible)}});
}

int cmd_selftest(const RunConfig& cfg) {
    Lab lab("selftest", cfg);
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    for (long long p : {2, 3, 5, 7})
        for (int k = 1; k <= 3; ++k)
            check(sphere_volume(p, k) == sphere_volume_oracle(p, k),
                  "sphere volume oracle p=" + std::to_string(p) + " k=" + std::to_string(k));

    PlaceSet S2({2});
    for (long long h : {1LL, 2LL, 4LL}) {
        RealizableHeight hh;
        for (const auto& r : realizable_heights(S2, h))
            if (r.value == h) hh = r;
        ShellQuery q{S2, hh, RegionE::norm_ball(3.0), std::nullopt};
        check(std::int64_t(enumerate_shell(q, cfg.threads).points.size()) ==
                  brute_force_recount(q),
              "recount oracle h=" + std::to_string(h));
    }

    for (std::uint32_t q = 2; q <= 12; ++q)
        check(sl2_order_enumerated(q) == sl2_order_formula(q),
              "SL2(Z/q) order formula q=" + std::to_string(q));

    try {
        CalibrationOptions opts;
        opts.radius = 25.0;
        opts.samples = 2000000;
        opts.seed = cfg.seed;
        opts.threads = cfg.threads;
        HaarCalibration cal = calibrate_haar(opts);
        check(cal.crosscheck_ratio > 0.85 && cal.crosscheck_ratio < 1.15,
              "calibration cross-check ratio " + std::to_string(cal.crosscheck_ratio));
    } catch (const std::exception& e) {
        check(false, std::string("calibration: ") + e.what());
    }

    lab.finish({{"failures", std::to_string(failures)}});
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slat: S-integral points of SL2 by finite-adelic height"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config");
    app.require_subcommand(1);
    app.fallthrough(); // verb-first invocation: flags after the verb reach the app

    RunConfig cfg;
    std::string primes_csv = "2";
    std::string regime = "mean_square";
    std::string radii = "0.1,0.2,0.5";

    app.add_option("--primes", primes_csv, "comma-separated primes of S");
    app.add_option("--b", cfg.b, "approximation scale b");
    app.add_option("--T", cfg.T, "height budget T (also the shell height for enumerate)");
    app.add_option("--max-height", cfg.max_height, "height cutoff for the volumes table");
    app.add_option("--metric", cfg.metric, "frobenius or log");
    app.add_option("--mod", cfg.mod_q, "congruence modulus q (coprime to S)");
    app.add_option("--residues", cfg.residues,
                   "full | identity | upper_triangular | explicit 'a,b;c,d|...'");
    app.add_option("--center", cfg.center, "matrix 'a,b;c,d' (base point or region center)");
    app.add_option("--radius", cfg.radius, "region radius");
    app.add_option("--samples", cfg.samples, "Monte Carlo samples per estimate");
    app.add_option("--x-samples", cfg.x_samples, "number of Haar-random base points");
    app.add_option("--seed", cfg.seed, "master seed; all randomness derives from it");
    app.add_option("--eta", cfg.eta, "slack exponent in reported envelopes");
    app.add_option("--kappa", cfg.kappa, "spectral decay exponent in (0, 1/2]");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.add_option("--calib-radius", cfg.calib_radius, "cross-check ball radius");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--cache-dir", cfg.cache_dir, "shell cache directory");
    app.add_option("--box-x", cfg.box_x, "Iwasawa box |x| bound");
    app.add_option("--box-y-min", cfg.box_y_min, "Iwasawa box y lower bound");
    app.add_option("--box-y-max", cfg.box_y_max, "Iwasawa box y upper bound");

    std::string format = "csv";
    auto* calibrate = app.add_subcommand("calibrate", "calibrate the Haar scale kappa");
    auto* volumes = app.add_subcommand("volumes", "exact p-adic sphere and ball volumes");
    volumes->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv"}));
    auto* enumerate = app.add_subcommand("enumerate", "points of one height shell");
    auto* count = app.add_subcommand("count", "N_T against V_T for one base point");
    auto* schmidt = app.add_subcommand("schmidt", "N_T vs V_T over Haar-random base points");
    auto* discrepancy = app.add_subcommand("discrepancy", "discrepancy trajectories");
    auto* sweep = app.add_subcommand("sweep", "small-ball discrepancy sweep");
    auto* selftest = app.add_subcommand("selftest", "run the oracle suite");

    discrepancy->add_option("--regime", regime, "mean_square or almost_sure");
    sweep->add_option("--radii", radii, "comma-separated ball radii");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.primes.clear();
        std::stringstream ss(primes_csv);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.primes.push_back(std::stoll(item));

        if (calibrate->parsed()) return cmd_calibrate(cfg);
        if (volumes->parsed()) return cmd_volumes(cfg);
        if (enumerate->parsed()) return cmd_enumerate(cfg);
        if (count->parsed()) return cmd_count(cfg);
        if (schmidt->parsed()) return cmd_schmidt(cfg);
        if (discrepancy->parsed()) return cmd_discrepancy(cfg, regime);
        if (sweep->parsed()) return cmd_sweep(cfg, radii);
        if (selftest->parsed()) return cmd_selftest(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
