#pragma once

#include <string>
#include <vector>

#include "slat/experiments.hpp"

namespace slat {

/// schmidt.csv: sample,T,N_T,V_T,diff,theta_fit_so_far (one block per
/// sample). The leading line carries the manifest reference.
std::string schmidt_csv(const SchmidtSweep& sweep, const std::string& manifest_ref);

/// Rows for a single-x run.
std::string schmidt_csv(const SchmidtResult& result, const std::string& manifest_ref);

/// discrepancy.csv: h,count,v_S,main_term,D,envelope,regime,seed.
std::string discrepancy_csv(const std::vector<DiscrepancyRecord>& records,
                            const std::string& manifest_ref);

/// volumes csv: h,sphere_volume,v_S.
std::string volumes_csv(const SphereVolumeTable& table, const std::string& manifest_ref);

} // namespace slat
