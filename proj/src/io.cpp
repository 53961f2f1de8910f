#include "phasekit/io.hpp"

#include "phasekit/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace phasekit::io {

namespace {

void write_meta(std::ostream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_value(double x) {
    if (x == 0.0) return "0";  // no "-0"
    return fmt::format("{:.12g}", x);
}

void write_scan_csv(std::ostream& out, const ScanTable& table, const Metadata& meta) {
    write_meta(out, meta);
    if (table.axis == ScanAxis::z_real) {
        out << "z,R_phi,R_n,sum,margin\n";
        for (const auto& r : table.rows) {
            out << format_value(r.z.real()) << ',' << format_value(r.r_phi) << ',' << format_value(r.r_n) << ','
                << format_value(r.sum) << ',' << format_value(r.margin) << '\n';
        }
    } else {
        out << "tau,R_phi,R_n,sum\n";
        for (const auto& r : table.rows) {
            out << format_value(r.tau) << ',' << format_value(r.r_phi) << ',' << format_value(r.r_n) << ','
                << format_value(r.sum) << '\n';
        }
    }
}

void write_scan_json(std::ostream& out, const ScanTable& table, const Metadata& meta) {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : meta) doc["meta"][key] = value;
    doc["axis"] = table.axis == ScanAxis::z_real ? "z" : "tau";
    doc["bound"] = kEntropyBound;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"z_re", r.z.real()},
                        {"z_im", r.z.imag()},
                        {"tau", r.tau},
                        {"R_phi", r.r_phi},
                        {"R_n", r.r_n},
                        {"sum", r.sum},
                        {"margin", r.margin}});
    }
    out << doc.dump(2) << '\n';
}

void write_surface_csv(std::ostream& out, const std::vector<ScanTable>& scans, const Metadata& meta) {
    write_meta(out, meta);
    out << "z,tau,R_phi,R_n,sum\n";
    for (const auto& scan : scans) {
        for (const auto& r : scan.rows) {
            out << format_value(r.z.real()) << ',' << format_value(r.tau) << ',' << format_value(r.r_phi) << ','
                << format_value(r.r_n) << ',' << format_value(r.sum) << '\n';
        }
        out << '\n';  // gnuplot block separator for pm3d
    }
}

void write_wigner_csv(std::ostream& out, const WignerGrid& wg, const Metadata& meta, bool with_xy) {
    write_meta(out, meta);
    out << (with_xy ? "n,theta,W,x,y\n" : "n,theta,W\n");
    const std::size_t m = wg.grid.m_points;
    for (std::size_t n = 0; n <= wg.n_display; ++n) {
        for (std::size_t j = 0; j < m; ++j) {
            const double theta = wg.grid.node(j);
            out << n << ',' << format_value(theta) << ',' << format_value(wg.at(n, j));
            if (with_xy) {
                const auto r = static_cast<double>(n);
                out << ',' << format_value(r * std::cos(theta)) << ',' << format_value(r * std::sin(theta));
            }
            out << '\n';
        }
    }
    const auto neg = negativity_report(wg);
    out << "# peak_n: " << wg.peak_n << '\n'
        << "# peak_theta: " << format_value(wg.peak_theta) << '\n'
        << "# peak_W: " << format_value(wg.at(wg.peak_n, wg.peak_j)) << '\n'
        << "# min_W: " << format_value(neg.min_value) << '\n'
        << "# min_n: " << neg.n << '\n'
        << "# min_theta: " << format_value(neg.theta) << '\n'
        << "# negative_fraction: " << format_value(neg.negative_fraction) << '\n';
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            const auto body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string::npos) {
                table.comments.emplace_back(body, "");
            } else {
                table.comments.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
            }
            continue;
        }
        std::stringstream cells(line);
        std::string cell;
        if (table.header.empty()) {
            while (std::getline(cells, cell, ',')) table.header.push_back(trim(cell));
            continue;
        }
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                const auto t = trim(cell);
                row.push_back(std::stod(t, &used));
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError, fmt::format("bad CSV cell '{}'", cell));
            }
        }
        if (row.size() != table.header.size()) {
            throw Error(ErrorKind::ParseError, fmt::format("CSV row has {} cells, header has {}", row.size(),
                                                           table.header.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace phasekit::io
