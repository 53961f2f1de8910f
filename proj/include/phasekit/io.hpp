// io.hpp: CSV/JSON emission of scans and Wigner grids, and a small CSV reader.
//
// Numbers are printed with 12 significant digits. Lines starting with '#' are metadata.

#pragma once

#include "phasekit/entropy.hpp"
#include "phasekit/wigner.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace phasekit::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_value(double x);

// z scans: z,R_phi,R_n,sum,margin. tau scans: tau,R_phi,R_n,sum.
void write_scan_csv(std::ostream& out, const ScanTable& table, const Metadata& meta);
void write_scan_json(std::ostream& out, const ScanTable& table, const Metadata& meta);

// z,tau,R_phi,R_n,sum for a family of tau scans taken at different z.
void write_surface_csv(std::ostream& out, const std::vector<ScanTable>& scans, const Metadata& meta);

// n,theta,W (plus x,y when requested) followed by a '#' block with peak and negativity data.
void write_wigner_csv(std::ostream& out, const WignerGrid& wg, const Metadata& meta, bool with_xy);

struct CsvTable {
    Metadata comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in);

}  // namespace phasekit::io
