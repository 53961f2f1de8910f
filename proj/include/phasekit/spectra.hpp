// spectra.hpp: discrete non-degenerate spectra e_n and their energy factorials [e_n]!.
//
// Energies are dimensionless (hbar = omega = 1) and always satisfy e_0 = 0, e_n > 0 for n >= 1.
// [e_n]! = e_1 e_2 ... e_n is carried as its natural log.

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phasekit {

enum class SpectrumKind { hydrogen_like, poschl_teller, isotonic, custom_table, custom_affine };

std::string_view to_string(SpectrumKind kind) noexcept;

// Tables up to this many entries are complete finite-level systems; longer tables are
// treated as prefixes of an infinite spectrum and probed for a convergence radius.
inline constexpr std::size_t kFiniteTableLimit = 1000;

namespace detail {
struct LogCache;
}

// Natural logs of [e_n]! for n = 0 .. size()-1. Immutable once built.
class LogWeights {
public:
    LogWeights() = default;
    explicit LogWeights(std::vector<double> ln_fact) : ln_fact_(std::move(ln_fact)) {}

    std::size_t size() const noexcept { return ln_fact_.size(); }
    double operator[](std::size_t n) const { return ln_fact_[n]; }
    std::span<const double> values() const noexcept { return ln_fact_; }

private:
    std::vector<double> ln_fact_;
};

class Spectrum {
public:
    static Spectrum hydrogen_like();
    // nu >= 2; nu = 2 is the infinite square well.
    static Spectrum poschl_teller(double nu);
    // gamma_iso >= 3/2 is kept as metadata; the shifted spectrum is 4n regardless.
    static Spectrum isotonic(double gamma_iso = 2.5);
    static Spectrum custom_table(std::vector<double> values);
    static Spectrum custom_affine(double slope);

    SpectrumKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& description() const noexcept { return description_; }
    double nu() const noexcept { return param_; }
    double gamma_iso() const noexcept { return param_; }
    double slope() const noexcept { return param_; }
    std::span<const double> table() const noexcept { return table_; }

    Spectrum with_name(std::string name) const;
    Spectrum with_description(std::string description) const;

    // Number of levels when the spectrum is a complete finite-level system.
    std::optional<std::size_t> level_count() const noexcept;
    // Largest n for which e_n is defined, if bounded.
    std::optional<std::size_t> max_index() const noexcept;

    double energy(std::size_t n) const;
    double log_energy(std::size_t n) const;
    // Cached and thread-safe; grows the shared cache by rebuild-and-swap.
    double log_factorial(std::size_t n) const;
    LogWeights log_weights(std::size_t length) const;

private:
    Spectrum(SpectrumKind kind, double param, std::vector<double> table);

    SpectrumKind kind_{SpectrumKind::hydrogen_like};
    double param_{0.0};
    std::vector<double> table_;
    std::string name_;
    std::string description_;
    std::shared_ptr<detail::LogCache> cache_;
};

double eval_energy(const Spectrum& spec, std::size_t n);
double log_factorial_energy(const Spectrum& spec, std::size_t n);

// Radius in |z| of sum |z|^{2n}/[e_n]!; +infinity for entire series.
double convergence_radius(const Spectrum& spec);

// Formula and domain summary, one line, for listings.
std::string describe(const Spectrum& spec);

// Strict JSON loader; see README for the schema.
Spectrum load_spectrum(std::string_view document);
Spectrum load_spectrum_file(const std::filesystem::path& path);

// Resolves a built-in name (hydrogen_like, poschl_teller, isotonic) or a spectrum file path.
Spectrum resolve_spectrum(std::string_view name_or_path, double nu = 5.0, double gamma_iso = 2.5);

}  // namespace phasekit
