#include "slat/csv_out.hpp"

#include <sstream>

#include "slat/manifest.hpp"

namespace slat {

namespace {

void schmidt_rows(std::ostringstream& out, int sample, const SchmidtResult& r) {
    for (const SchmidtRow& row : r.rows)
        out << sample << "," << row.T << "," << row.N << "," << fmt_double(row.V) << ","
            << fmt_double(row.diff) << "," << fmt_double(row.theta_fit) << "\n";
}

} // namespace

std::string schmidt_csv(const SchmidtSweep& sweep, const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "sample,T,N_T,V_T,diff,theta_fit_so_far\n";
    for (std::size_t i = 0; i < sweep.per_sample.size(); ++i)
        schmidt_rows(out, int(i), sweep.per_sample[i]);
    return out.str();
}

std::string schmidt_csv(const SchmidtResult& result, const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "sample,T,N_T,V_T,diff,theta_fit_so_far\n";
    schmidt_rows(out, 0, result);
    return out.str();
}

std::string discrepancy_csv(const std::vector<DiscrepancyRecord>& records,
                            const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "h,count,v_S,main_term,D,envelope,regime,seed\n";
    for (const DiscrepancyRecord& r : records)
        out << r.h << "," << r.count << "," << fmt_double(r.v_S) << ","
            << fmt_double(r.main_term) << "," << fmt_double(r.D) << ","
            << fmt_double(r.envelope) << "," << r.regime << "," << r.seed << "\n";
    return out.str();
}

std::string volumes_csv(const SphereVolumeTable& table, const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "h,sphere_volume,v_S\n";
    for (const auto& row : table.rows())
        out << row.h.value << "," << row.sphere.str() << "," << row.ball.str() << "\n";
    return out.str();
}

} // namespace slat
