#include "commands.hpp"

#include "phasekit/entropy.hpp"
#include "phasekit/error.hpp"
#include "phasekit/io.hpp"
#include "phasekit/spectra.hpp"
#include "phasekit/states.hpp"
#include "phasekit/wigner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace phasekit::cli {

namespace fs = std::filesystem;

namespace {

double parse_number(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("'{}' is not a number", text));
    }
    return value;
}

struct Settings {
    std::string spectrum;
    double nu = 5.0;
    double gamma_iso = 2.5;
    std::size_t grid = 4096;
    double theta0 = -std::numbers::pi;
    double tol = kDefaultTolerance;
    std::string output = "-";
    std::string format = "csv";

    Spectrum resolve() const { return resolve_spectrum(spectrum, nu, gamma_iso); }
    PhaseGrid phase_grid() const { return PhaseGrid{theta0, grid}; }
    EntropyOptions entropy_options() const {
        EntropyOptions opt;
        opt.grid = phase_grid();
        opt.tol = tol;
        return opt;
    }
    void validate() const {
        if (!(tol > 0.0 && tol < 1e-3)) {
            throw Error(ErrorKind::InvalidArgument, fmt::format("--tol must lie in (0, 1e-3) (got {})", tol));
        }
        if (grid == 0) throw Error(ErrorKind::InvalidArgument, "--grid must be positive");
    }
};

void add_spectrum_options(CLI::App* cmd, Settings& s) {
    cmd->add_option("--spectrum", s.spectrum, "hydrogen_like | poschl_teller | isotonic | path to spectrum JSON")
        ->required();
    cmd->add_option("--nu", s.nu, "Poschl-Teller nu (>= 2)")->capture_default_str();
    cmd->add_option("--gamma-iso", s.gamma_iso, "isotonic gamma (>= 3/2, metadata only)")->capture_default_str();
    cmd->add_option("--grid", s.grid, "phase grid nodes")->capture_default_str();
    cmd->add_option("--theta0", s.theta0, "phase window start")->capture_default_str();
    cmd->add_option("--tol", s.tol, "truncation tolerance on the discarded probability")->capture_default_str();
    cmd->add_option("-o,--output", s.output, "output file ('-' for stdout)")->capture_default_str();
}

std::string format_complex(complex z) {
    if (z.imag() == 0.0) return io::format_value(z.real());
    return fmt::format("{}{}{}i", io::format_value(z.real()), z.imag() < 0 ? "-" : "+",
                       io::format_value(std::abs(z.imag())));
}

io::Metadata base_meta(std::string_view command, const Spectrum& spec, const Settings& s) {
    return {
        {"phasekit", PHASEKIT_VERSION},
        {"command", std::string(command)},
        {"spectrum", describe(spec)},
        {"grid", fmt::format("{} nodes from theta0 = {}", s.grid, io::format_value(s.theta0))},
        {"tol", io::format_value(s.tol)},
        {"entropy_bound", fmt::format("ln(2 pi) = {}", io::format_value(kEntropyBound))},
    };
}

void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, fmt::format("cannot write '{}'", path));
    out << text;
}

std::string scan_text(const ScanTable& table, const io::Metadata& meta, const std::string& format) {
    std::ostringstream buf;
    if (format == "json") {
        io::write_scan_json(buf, table, meta);
    } else {
        io::write_scan_csv(buf, table, meta);
    }
    return buf.str();
}

std::string wigner_text(const WignerGrid& wg, const io::Metadata& meta, bool xy) {
    std::ostringstream buf;
    io::write_wigner_csv(buf, wg, meta, xy);
    return buf.str();
}

// ---------------------------------------------------------------- figures

struct FigureJob {
    std::string id;
    std::function<void(const fs::path&)> run;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return xs;
}

void write_file(const fs::path& path, const std::string& text) { emit(path.string(), text); }

io::Metadata figure_meta(std::string_view fig, const Spectrum& spec, const Settings& s,
                         std::initializer_list<std::pair<std::string, std::string>> extra) {
    auto meta = base_meta(fmt::format("reproduce {}", fig), spec, s);
    meta.insert(meta.end(), extra.begin(), extra.end());
    return meta;
}

void figure_z_scan(const fs::path& dir, const std::string& fig, const Spectrum& spec, std::vector<double> zs,
                   std::initializer_list<std::pair<std::string, std::string>> extra) {
    Settings s;
    const auto table = entropy_scan_z(spec, zs, 0.0, s.entropy_options());
    write_file(dir / (fig + ".csv"), scan_text(table, figure_meta(fig, spec, s, extra), "csv"));
    write_file(dir / (fig + ".gp"),
               fmt::format("set datafile separator ','\n"
                           "set xlabel 'z'\nset ylabel 'entropy (nats)'\nset key top left\n"
                           "plot '{0}.csv' using 1:2 with lines dt 4 title 'R_phi', \\\n"
                           "     '{0}.csv' using 1:3 with lines dt 2 title 'R_n', \\\n"
                           "     '{0}.csv' using 1:4 with lines lw 2 title 'R_phi + R_n', \\\n"
                           "     log(2*pi) with lines lc rgb 'gray' title 'ln(2 pi)'\n",
                           fig));
}

void figure_wigner(const fs::path& dir, const std::string& fig, const Spectrum& spec, double z,
                   std::initializer_list<std::pair<std::string, std::string>> extra) {
    Settings s;
    s.grid = 512;
    const auto state = build_state(spec, complex{z, 0.0}, 0.0, s.tol);
    const auto wg = wigner_grid(state, s.phase_grid());
    auto meta = figure_meta(fig, spec, s, extra);
    meta.emplace_back("z", io::format_value(z));
    meta.emplace_back("tau", "0");
    write_file(dir / (fig + ".csv"), wigner_text(wg, meta, true));
    write_file(dir / (fig + ".gp"),
               fmt::format("set datafile separator ','\n"
                           "set xlabel 'x = n cos(theta)'\nset ylabel 'y = n sin(theta)'\nset zlabel 'W'\n"
                           "splot '{0}.csv' using 4:5:3 with points pt 7 ps 0.2 palette notitle\n",
                           fig));
}

void figure_evolution(const fs::path& dir, const std::string& fig, const Spectrum& spec,
                      std::vector<double> surface_z, std::vector<double> surface_tau, std::vector<double> cut_z,
                      std::vector<double> cut_tau,
                      std::initializer_list<std::pair<std::string, std::string>> extra) {
    Settings s;
    const auto opt = s.entropy_options();
    std::vector<ScanTable> surface;
    surface.reserve(surface_z.size());
    for (double z : surface_z) surface.push_back(entropy_scan_tau(spec, z, surface_tau, opt));
    {
        std::ostringstream buf;
        io::write_surface_csv(buf, surface, figure_meta(fig + "a", spec, s, extra));
        write_file(dir / (fig + "a.csv"), buf.str());
    }
    std::string plot_b = "set datafile separator ','\nset xlabel 'tau'\nset ylabel 'R_phi + R_n'\nplot ";
    for (std::size_t i = 0; i < cut_z.size(); ++i) {
        const auto table = entropy_scan_tau(spec, cut_z[i], cut_tau, opt);
        auto meta = figure_meta(fig + "b", spec, s, extra);
        meta.emplace_back("z", io::format_value(cut_z[i]));
        const auto name = fmt::format("{}b_z{}", fig, io::format_value(cut_z[i]));
        write_file(dir / (name + ".csv"), scan_text(table, meta, "csv"));
        plot_b += fmt::format("{}'{}.csv' using 1:4 with lines title 'z = {}'", i ? ", \\\n     " : "", name,
                              io::format_value(cut_z[i]));
    }
    write_file(dir / (fig + "a.gp"),
               fmt::format("set datafile separator ','\nset xlabel 'z'\nset ylabel 'tau'\nset zlabel 'R_phi + R_n'\n"
                           "splot '{}a.csv' using 1:2:5 with pm3d notitle\n",
                           fig));
    write_file(dir / (fig + "b.gp"), plot_b + "\n");
}

std::vector<FigureJob> figure_jobs() {
    const auto hydrogen = Spectrum::hydrogen_like();
    const auto pt5 = Spectrum::poschl_teller(5.0);
    const auto iso = Spectrum::isotonic(2.5);
    const std::pair<std::string, std::string> nu_note{"assumption", "nu = 5 as in the z-scan figure"};
    return {
        {"fig1", [=](const fs::path& d) {
             figure_z_scan(d, "fig1", hydrogen, linspace(0.05, 0.95, 19), {{"z_window", "(0, 0.95] step 0.05"}});
         }},
        {"fig2", [=](const fs::path& d) { figure_z_scan(d, "fig2", pt5, linspace(0.0, 20.0, 81), {}); }},
        {"fig3", [=](const fs::path& d) { figure_z_scan(d, "fig3", iso, linspace(0.0, 20.0, 81), {}); }},
        {"fig4", [=](const fs::path& d) { figure_wigner(d, "fig4", hydrogen, 0.5, {}); }},
        {"fig5", [=](const fs::path& d) { figure_wigner(d, "fig5", pt5, 5.0, {nu_note}); }},
        {"fig6", [=](const fs::path& d) { figure_wigner(d, "fig6", iso, 5.0, {}); }},
        {"fig7", [=](const fs::path& d) {
             figure_evolution(d, "fig7", hydrogen, linspace(0.05, 0.9, 18), linspace(0.0, 30.0, 121),
                              {0.3, 0.5, 0.8}, linspace(0.0, 30.0, 301), {});
         }},
        {"fig8", [=](const fs::path& d) {
             figure_evolution(d, "fig8", pt5, linspace(0.5, 20.0, 40), linspace(0.0, 10.0, 101), {2.0, 5.0, 20.0},
                              linspace(0.0, 10.0, 201), {nu_note});
         }},
        {"fig9", [=](const fs::path& d) {
             figure_evolution(d, "fig9", iso, linspace(0.5, 20.0, 40), linspace(0.0, 5.0, 51), {2.0, 10.0, 20.0},
                              linspace(0.0, 5.0, 51), {});
         }},
    };
}

int report_error(const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidSpectrum:
    case ErrorKind::InvalidArgument: return kUsage;
    default: return kDomain;
    }
}

}  // namespace

std::vector<double> parse_range(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("range '{}' must look like start:stop:count", text));
    }
    const double a = parse_number(text.substr(0, first));
    const double b = parse_number(text.substr(first + 1, second - first - 1));
    const auto count_text = std::string(text.substr(second + 1));
    std::size_t used = 0;
    long long count = 0;
    try {
        count = std::stoll(count_text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != count_text.size() || count < 1) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("range count in '{}' must be an integer >= 1", text));
    }
    return linspace(a, b, static_cast<std::size_t>(count));
}

std::complex<double> parse_complex(std::string_view text) {
    if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex number");
    if (text.back() != 'i') return {parse_number(text), 0.0};
    const auto body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_number(t);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_number(body.substr(0, split)), imag_part(body.substr(split))};
}

int run(int argc, char** argv) {
    CLI::App app{"phasekit: number-phase entropies and Wigner functions of generalized coherent states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PHASEKIT_VERSION);

    // spectra
    auto* spectra = app.add_subcommand("spectra", "list built-in spectra or validate a spectrum file");
    spectra->require_subcommand(1);
    auto* list = spectra->add_subcommand("list", "list built-in spectra");
    auto* validate = spectra->add_subcommand("validate", "validate a spectrum JSON file");
    std::string validate_path;
    validate->add_option("file", validate_path, "spectrum file")->required();

    // entropy-scan
    Settings scan;
    std::string z_range;
    double scan_tau = 0.0;
    bool check_quadrature = false;
    auto* entropy = app.add_subcommand("entropy-scan", "R_phi, R_n and their sum along real z");
    add_spectrum_options(entropy, scan);
    entropy->add_option("--z-range", z_range, "start:stop:count")->required();
    entropy->add_option("--tau", scan_tau, "evolution time")->capture_default_str();
    entropy->add_option("--format", scan.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    entropy->add_flag("--check-quadrature", check_quadrature, "verify R_phi against a doubled grid");

    // wigner
    Settings wig;
    std::string wig_z;
    double wig_tau = 0.0;
    std::optional<std::size_t> wig_rows;
    bool wig_xy = false;
    auto* wigner = app.add_subcommand("wigner", "number-phase Wigner function on an (n, theta) grid");
    add_spectrum_options(wigner, wig);
    wigner->add_option("--z", wig_z, "amplitude, e.g. 0.5 or 0.3+0.2i")->required();
    wigner->add_option("--tau", wig_tau, "evolution time")->capture_default_str();
    wigner->add_option("--nmax", wig_rows, "largest n row (default: covers 1 - 1e-6 of P(n), at most 64)");
    wigner->add_flag("--xy", wig_xy, "add cylindrical x = n cos(theta), y = n sin(theta) columns");

    // evolve
    Settings evo;
    std::string evo_z;
    std::string tau_range;
    bool evo_wigner = false;
    std::optional<std::size_t> evo_rows;
    auto* evolve_cmd = app.add_subcommand("evolve", "entropies along the evolution time tau");
    add_spectrum_options(evolve_cmd, evo);
    evolve_cmd->add_option("--z", evo_z, "amplitude")->required();
    evolve_cmd->add_option("--tau-range", tau_range, "start:stop:count")->required();
    evolve_cmd->add_option("--format", evo.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    evolve_cmd->add_flag("--wigner", evo_wigner, "also write one Wigner grid per tau next to the output");
    evolve_cmd->add_option("--nmax", evo_rows, "largest n row for --wigner grids");

    // reproduce
    std::string figure;
    std::string out_dir = "out";
    auto* reproduce = app.add_subcommand("reproduce", "write data and gnuplot scripts for a figure");
    reproduce->add_option("figure", figure, "fig1 .. fig9, or all")->required();
    reproduce->add_option("-o,--output", out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*list) {
            for (const auto& spec : {Spectrum::hydrogen_like(), Spectrum::poschl_teller(5.0), Spectrum::isotonic()}) {
                std::cout << describe(spec) << '\n';
            }
            std::cout << "custom_table: e_n from a 'values' array with e_0 = 0, e_n > 0\n"
                      << "custom_affine: e_n = c n, c > 0, radius inf\n";
            return kOk;
        }
        if (*validate) {
            const auto spec = load_spectrum_file(validate_path);
            std::cout << "ok: " << describe(spec) << '\n';
            return kOk;
        }
        if (*entropy) {
            scan.validate();
            const auto spec = scan.resolve();
            const auto zs = parse_range(z_range);
            auto opt = scan.entropy_options();
            opt.check_refinement = check_quadrature;
            const auto table = entropy_scan_z(spec, zs, scan_tau, opt);
            auto meta = base_meta("entropy-scan", spec, scan);
            meta.emplace_back("tau", io::format_value(scan_tau));
            meta.emplace_back("z_range", z_range);
            emit(scan.output, scan_text(table, meta, scan.format));
            return kOk;
        }
        if (*wigner) {
            wig.validate();
            const auto spec = wig.resolve();
            const complex z = parse_complex(wig_z);
            const auto state = build_state(spec, z, wig_tau, wig.tol);
            const auto wg = wig_rows ? wigner_grid(state, *wig_rows, wig.phase_grid())
                                     : wigner_grid(state, wig.phase_grid());
            auto meta = base_meta("wigner", spec, wig);
            meta.emplace_back("z", format_complex(z));
            meta.emplace_back("tau", io::format_value(wig_tau));
            meta.emplace_back("n_max", std::to_string(state.n_max()));
            emit(wig.output, wigner_text(wg, meta, wig_xy));
            return kOk;
        }
        if (*evolve_cmd) {
            evo.validate();
            const auto spec = evo.resolve();
            const complex z = parse_complex(evo_z);
            const auto taus = parse_range(tau_range);
            const auto table = entropy_scan_tau(spec, z, taus, evo.entropy_options());
            auto meta = base_meta("evolve", spec, evo);
            meta.emplace_back("z", format_complex(z));
            meta.emplace_back("tau_range", tau_range);
            emit(evo.output, scan_text(table, meta, evo.format));
            if (evo_wigner) {
                const fs::path out = evo.output == "-" ? fs::path("evolve.csv") : fs::path(evo.output);
                const auto base = build_state(spec, z, 0.0, evo.tol);
                for (std::size_t i = 0; i < taus.size(); ++i) {
                    const auto state = evolve(base, taus[i]);
                    const auto wg = evo_rows ? wigner_grid(state, *evo_rows, evo.phase_grid())
                                             : wigner_grid(state, evo.phase_grid());
                    auto wmeta = base_meta("evolve --wigner", spec, evo);
                    wmeta.emplace_back("z", format_complex(z));
                    wmeta.emplace_back("tau", io::format_value(taus[i]));
                    const auto name = fmt::format("{}_wigner_{:04d}.csv", out.stem().string(), i);
                    emit((out.parent_path() / name).string(), wigner_text(wg, wmeta, false));
                }
            }
            return kOk;
        }
        if (*reproduce) {
            const auto jobs = figure_jobs();
            bool found = false;
            for (const auto& job : jobs) {
                if (figure == "all" || figure == job.id) {
                    job.run(fs::path(out_dir));
                    std::cout << "wrote " << job.id << " to " << out_dir << '\n';
                    found = true;
                }
            }
            if (!found) {
                std::cerr << "InvalidArgument: unknown figure '" << figure << "' (expected fig1..fig9 or all)\n";
                return kUsage;
            }
            return kOk;
        }
    } catch (const Error& e) {
        return report_error(e);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "InvalidArgument: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace phasekit::cli
