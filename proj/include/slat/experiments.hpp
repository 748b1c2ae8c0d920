#pragma once

#include "slat/enumerate.hpp"
#include "slat/fitting.hpp"
#include "slat/padic_volume.hpp"

namespace slat {

/// Parameters of a counting experiment: approximation scale b, height
/// budget T, metric, and the exponent triple (a, kappa, d) driving the
/// predicted exponents.
struct ApproximationParams {
    double b = 0.4;
    long long T = 128;
    MetricChoice metric = MetricChoice::frobenius;
    double a_exponent = 2.0;     // volume growth of the height spheres
    double spectral_kappa = 0.5; // tempered default
    int dim_d = 3;
    double eta = 0.1;  // slack exponent in reported envelopes
    double ell0 = 0.5; // small-scale regime bound: balls of radius < ell0
                       // meet no nontrivial integer translate of themselves
};

/// b0 = 2 a kappa / d.
double predicted_b0(double a, double kappa, int d);

/// theta0(b) = 1/2 + (1/2 - kappa) a / (a - b d), for b in (0, b0);
/// throws std::domain_error outside that range, naming the violated bound.
double predicted_theta0(double a, double kappa, int d, double b);

struct SchmidtRow {
    long long T = 1;
    std::int64_t N = 0;  // N_T(x)
    double V = 0.0;      // V_T
    double diff = 0.0;   // N_T - V_T
    double theta_fit = 0.0; // fit of log|diff| vs log V over rows so far
};

struct SchmidtResult {
    std::vector<SchmidtRow> rows; // one per realizable T <= T_max
    double fitted_theta = 0.0;
    double predicted_theta0 = 0.0;
    bool in_proven_range = true; // b < b0
};

/// V_T = sum over realizable h <= T of vol(B(e, h^-b)) * m_S(Sigma_S(h)),
/// one value per realizable T. Radii must lie inside the volume table grid.
std::vector<std::pair<long long, double>> volume_sum_VT(const ApproximationParams& params,
                                                        const PlaceSet& S,
                                                        const ArchVolumeTable& table);

/// N_T(x): for each realizable h <= T, counts points of height exactly h
/// with distance(x, r) <= h^-b; running sum against V_T.
SchmidtResult count_NT(const RealPoint& x, const ApproximationParams& params, const PlaceSet& S,
                       const ArchVolumeTable& table, int threads = 0);

struct DiscrepancyRecord {
    long long h = 1;
    std::int64_t count = 0;
    double v_S = 0.0;
    double main_term = 0.0; // m_inf(E) m^S(W)
    double D = 0.0;         // |count / v_S - main_term|
    double envelope = 0.0;  // regime-specific predicted scale for D
    std::string regime;
    std::uint64_t seed = 0;
    bool admissible = true; // small-ball regime only
};

/// Tools shared by the discrepancy experiments.
struct ExperimentContext {
    PlaceSet S;
    HaarCalibration cal;
    const ArchVolumeTable* table = nullptr; // metric balls at the identity
    int threads = 0;
    std::int64_t volume_mc_samples = 2000000;
};

/// m_inf(E): table lookup for metric balls at the identity matching the
/// table's metric, Monte Carlo otherwise.
double region_volume(const RegionE& E, const ExperimentContext& ctx, std::uint64_t seed);

/// D(R_S(h), E x W) for one region (already translated as desired).
DiscrepancyRecord discrepancy(long long h, const RegionE& E, const CongruenceCondition& W,
                              const ExperimentContext& ctx, std::uint64_t seed = 0);

/// sqrt of the Haar-weighted average of D^2 over x sampled in the box Q.
/// n_samples = 1 reduces to a single-x discrepancy.
double mean_square_discrepancy(long long h, const RegionE& E, const CongruenceCondition& W,
                               const ExperimentContext& ctx, const IwasawaBox& Q,
                               int n_samples, std::uint64_t seed);

/// D along increasing realizable h for one fixed x, with the almost-sure
/// envelope (log v)^{3/2+eta} v^{-kappa}.
std::vector<DiscrepancyRecord> almost_sure_trajectory(const RealPoint& x, const RegionE& E,
                                                      const CongruenceCondition& W,
                                                      const std::vector<long long>& heights,
                                                      const ApproximationParams& params,
                                                      const ExperimentContext& ctx);

struct SweepEntry {
    DiscrepancyRecord record;
    double x_norm = 0.0;
    double ell = 0.0;
    double error_scale_count = 0.0; // E_{l,W}(h), on the count scale
    bool out_of_regime = false;     // ell >= ell0
};

/// Small-scale ball sweep: per (x, ell), count in B(x, ell) x W against the
/// main term, with the predicted uniform error scale and the admissibility
/// flag m(B)^2 m^S(W) >= v^{-2 kappa}.
std::vector<SweepEntry> uniform_discrepancy_sweep(const std::vector<RealPoint>& xs,
                                                  const std::vector<double>& ells,
                                                  const CongruenceCondition& W, long long h,
                                                  const ApproximationParams& params,
                                                  const ExperimentContext& ctx);

/// Schmidt-style sweep over Haar-random x in a box.
struct SchmidtSweep {
    std::vector<SchmidtResult> per_sample;
    std::vector<long long> heights;          // realizable T grid
    std::vector<double> V;                   // V_T per grid entry
    std::vector<double> median_abs_diff;     // per grid entry
    double median_slope = 0.0;               // log median|diff| vs log V_T
    double share_within(double lo, double hi) const; // N/V at final T
};

SchmidtSweep schmidt_sweep(const ApproximationParams& params, const PlaceSet& S,
                           const ArchVolumeTable& table, const IwasawaBox& Q, int n_samples,
                           std::uint64_t seed, int threads);

} // namespace slat
