#include "phasekit/spectra.hpp"

#include "phasekit/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

namespace phasekit {

namespace detail {
struct LogCache {
    std::mutex mu;
    std::shared_ptr<const std::vector<double>> ln_fact;
};
}  // namespace detail

std::string_view to_string(SpectrumKind kind) noexcept {
    switch (kind) {
    case SpectrumKind::hydrogen_like: return "hydrogen_like";
    case SpectrumKind::poschl_teller: return "poschl_teller";
    case SpectrumKind::isotonic: return "isotonic";
    case SpectrumKind::custom_table: return "custom_table";
    case SpectrumKind::custom_affine: return "custom_affine";
    }
    return "unknown";
}

Spectrum::Spectrum(SpectrumKind kind, double param, std::vector<double> table)
    : kind_(kind), param_(param), table_(std::move(table)), name_(to_string(kind)),
      cache_(std::make_shared<detail::LogCache>()) {}

Spectrum Spectrum::hydrogen_like() {
    Spectrum s(SpectrumKind::hydrogen_like, 0.0, {});
    s.description_ = "hydrogen-like spectrum e_n = 1 - 1/(n+1)^2";
    return s;
}

Spectrum Spectrum::poschl_teller(double nu) {
    if (!std::isfinite(nu) || nu < 2.0) {
        throw Error(ErrorKind::InvalidSpectrum, fmt::format("poschl_teller requires nu >= 2 (got {})", nu));
    }
    Spectrum s(SpectrumKind::poschl_teller, nu, {});
    s.description_ = fmt::format("Poschl-Teller spectrum e_n = n(n+{})", nu);
    return s;
}

Spectrum Spectrum::isotonic(double gamma_iso) {
    if (!std::isfinite(gamma_iso) || gamma_iso < 1.5) {
        throw Error(ErrorKind::InvalidSpectrum,
                    fmt::format("isotonic requires gamma_iso >= 3/2 (got {})", gamma_iso));
    }
    Spectrum s(SpectrumKind::isotonic, gamma_iso, {});
    s.description_ = fmt::format("isotonic oscillator 2(2n+{0}) shifted by 2*{0}: e_n = 4n", gamma_iso);
    return s;
}

Spectrum Spectrum::custom_table(std::vector<double> values) {
    if (values.empty()) {
        throw Error(ErrorKind::InvalidSpectrum, "custom_table needs at least one value");
    }
    if (values[0] != 0.0) {
        throw Error(ErrorKind::InvalidSpectrum, "e_0 must be 0");
    }
    for (std::size_t n = 1; n < values.size(); ++n) {
        if (!std::isfinite(values[n]) || values[n] <= 0.0) {
            throw Error(ErrorKind::InvalidSpectrum,
                        fmt::format("e_n must be positive and finite for n >= 1 (n={}, e_n={})", n, values[n]));
        }
    }
    const auto count = values.size();
    Spectrum s(SpectrumKind::custom_table, 0.0, std::move(values));
    s.description_ = fmt::format("tabulated spectrum with {} levels", count);
    return s;
}

Spectrum Spectrum::custom_affine(double slope) {
    if (!std::isfinite(slope) || slope <= 0.0) {
        throw Error(ErrorKind::InvalidSpectrum, fmt::format("custom_affine requires c > 0 (got {})", slope));
    }
    Spectrum s(SpectrumKind::custom_affine, slope, {});
    s.description_ = fmt::format("linear spectrum e_n = {} n", slope);
    return s;
}

Spectrum Spectrum::with_name(std::string name) const {
    Spectrum s = *this;
    s.name_ = std::move(name);
    return s;
}

Spectrum Spectrum::with_description(std::string description) const {
    Spectrum s = *this;
    s.description_ = std::move(description);
    return s;
}

std::optional<std::size_t> Spectrum::level_count() const noexcept {
    if (kind_ == SpectrumKind::custom_table && table_.size() <= kFiniteTableLimit) {
        return table_.size();
    }
    return std::nullopt;
}

std::optional<std::size_t> Spectrum::max_index() const noexcept {
    if (kind_ == SpectrumKind::custom_table) return table_.size() - 1;
    return std::nullopt;
}

double Spectrum::energy(std::size_t n) const {
    const auto x = static_cast<double>(n);
    switch (kind_) {
    case SpectrumKind::hydrogen_like: return x * (x + 2.0) / ((x + 1.0) * (x + 1.0));
    case SpectrumKind::poschl_teller: return x * (x + param_);
    case SpectrumKind::isotonic: return 4.0 * x;
    case SpectrumKind::custom_affine: return param_ * x;
    case SpectrumKind::custom_table:
        if (n >= table_.size()) {
            throw Error(ErrorKind::IndexOutOfTable,
                        fmt::format("e_{} requested but table '{}' has {} entries", n, name_, table_.size()));
        }
        return table_[n];
    }
    return 0.0;
}

double Spectrum::log_energy(std::size_t n) const {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    const auto x = static_cast<double>(n);
    switch (kind_) {
    case SpectrumKind::hydrogen_like: return std::log1p(-1.0 / ((x + 1.0) * (x + 1.0)));
    case SpectrumKind::poschl_teller: return std::log(x) + std::log(x + param_);
    case SpectrumKind::isotonic: return std::log(4.0 * x);
    case SpectrumKind::custom_affine: return std::log(param_) + std::log(x);
    case SpectrumKind::custom_table: return std::log(energy(n));
    }
    return 0.0;
}

double Spectrum::log_factorial(std::size_t n) const {
    if (auto top = max_index(); top && n > *top) {
        throw Error(ErrorKind::IndexOutOfTable,
                    fmt::format("[e_{}]! requested but table '{}' has {} entries", n, name_, table_.size()));
    }
    std::shared_ptr<const std::vector<double>> snapshot;
    {
        std::lock_guard lock(cache_->mu);
        snapshot = cache_->ln_fact;
    }
    if (snapshot && n < snapshot->size()) return (*snapshot)[n];

    std::size_t old_len = snapshot ? snapshot->size() : 0;
    std::size_t new_len = std::max<std::size_t>(n + 1, std::max<std::size_t>(64, 2 * old_len));
    if (auto top = max_index()) new_len = std::min(new_len, *top + 1);

    auto grown = std::make_shared<std::vector<double>>();
    grown->reserve(new_len);
    if (snapshot) grown->assign(snapshot->begin(), snapshot->end());
    if (grown->empty()) grown->push_back(0.0);
    for (std::size_t k = grown->size(); k < new_len; ++k) {
        const double le = log_energy(k);
        if (!std::isfinite(le)) {
            throw Error(ErrorKind::InvalidSpectrum, fmt::format("e_{} is not positive", k));
        }
        grown->push_back(grown->back() + le);
    }
    const double value = (*grown)[n];
    {
        std::lock_guard lock(cache_->mu);
        if (!cache_->ln_fact || cache_->ln_fact->size() < grown->size()) cache_->ln_fact = std::move(grown);
    }
    return value;
}

LogWeights Spectrum::log_weights(std::size_t length) const {
    std::vector<double> out(length);
    if (length > 0) log_factorial(length - 1);
    for (std::size_t n = 0; n < length; ++n) out[n] = log_factorial(n);
    return LogWeights(std::move(out));
}

double eval_energy(const Spectrum& spec, std::size_t n) { return spec.energy(n); }

double log_factorial_energy(const Spectrum& spec, std::size_t n) { return spec.log_factorial(n); }

double convergence_radius(const Spectrum& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (spec.kind()) {
    case SpectrumKind::hydrogen_like: return 1.0;
    case SpectrumKind::poschl_teller:
    case SpectrumKind::isotonic:
    case SpectrumKind::custom_affine: return inf;
    case SpectrumKind::custom_table: break;
    }
    // A complete finite-level system has a polynomial normalization.
    if (spec.level_count()) return inf;

    // Ratio test: successive terms scale by |z|^2 / e_n, so radius^2 = lim e_n.
    // Probe n in [1e3, 1e4] (clipped to the table); the window minimum is the conservative limit.
    constexpr std::size_t window_lo = 1000;
    constexpr std::size_t window_hi = 10000;
    const auto values = spec.table();
    const std::size_t hi = std::min(window_hi, values.size() - 1);
    if (values[hi] > 1e6) return inf;
    double lim = inf;
    for (std::size_t n = window_lo; n <= hi; ++n) lim = std::min(lim, values[n]);
    return std::sqrt(lim);
}

std::string describe(const Spectrum& spec) {
    const double r = convergence_radius(spec);
    const std::string radius = std::isinf(r) ? "inf" : fmt::format("{:.12g}", r);
    switch (spec.kind()) {
    case SpectrumKind::hydrogen_like:
        return fmt::format("{}: e_n = 1 − 1/(n+1)^2, radius {}", spec.name(), radius);
    case SpectrumKind::poschl_teller:
        return fmt::format("{}: e_n = n(n+nu), nu = {} (nu >= 2), radius {}", spec.name(), spec.nu(), radius);
    case SpectrumKind::isotonic:
        return fmt::format("{}: e_n = 4n (2(2n+gamma) shifted by 2 gamma, gamma = {}), radius {}", spec.name(),
                           spec.gamma_iso(), radius);
    case SpectrumKind::custom_affine:
        return fmt::format("{}: e_n = {} n, radius {}", spec.name(), spec.slope(), radius);
    case SpectrumKind::custom_table:
        return fmt::format("{}: tabulated, {} entries, radius {}", spec.name(), spec.table().size(), radius);
    }
    return spec.name();
}

namespace {

using nlohmann::json;

double require_number(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw Error(ErrorKind::ParseError, fmt::format("field '{}' must be a number", key));
    return v.get<double>();
}

}  // namespace

Spectrum load_spectrum(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "spectrum document must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw Error(ErrorKind::ParseError, "missing string field 'kind'");
    }
    const auto kind = doc["kind"].get<std::string>();

    static const std::set<std::string> known = {"kind", "name", "description", "nu", "gamma_iso", "values", "c"};
    std::set<std::string> allowed = {"kind", "name", "description"};
    if (kind == "poschl_teller") allowed.insert("nu");
    else if (kind == "isotonic") allowed.insert("gamma_iso");
    else if (kind == "custom_table") allowed.insert("values");
    else if (kind == "custom_affine") allowed.insert("c");
    else if (kind != "hydrogen_like") throw Error(ErrorKind::ParseError, fmt::format("unknown kind '{}'", kind));

    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw Error(ErrorKind::ParseError, fmt::format("unknown field '{}'", key));
        if (!allowed.contains(key)) {
            throw Error(ErrorKind::ParseError, fmt::format("field '{}' does not apply to kind '{}'", key, kind));
        }
    }
    for (const char* key : {"name", "description"}) {
        if (doc.contains(key) && !doc[key].is_string()) {
            throw Error(ErrorKind::ParseError, fmt::format("field '{}' must be a string", key));
        }
    }

    auto spec = [&]() {
        if (kind == "hydrogen_like") return Spectrum::hydrogen_like();
        if (kind == "poschl_teller") {
            if (!doc.contains("nu")) throw Error(ErrorKind::ParseError, "poschl_teller needs field 'nu'");
            return Spectrum::poschl_teller(require_number(doc, "nu"));
        }
        if (kind == "isotonic") {
            return doc.contains("gamma_iso") ? Spectrum::isotonic(require_number(doc, "gamma_iso"))
                                             : Spectrum::isotonic();
        }
        if (kind == "custom_affine") {
            if (!doc.contains("c")) throw Error(ErrorKind::ParseError, "custom_affine needs field 'c'");
            return Spectrum::custom_affine(require_number(doc, "c"));
        }
        if (!doc.contains("values") || !doc["values"].is_array()) {
            throw Error(ErrorKind::ParseError, "custom_table needs array field 'values'");
        }
        std::vector<double> values;
        values.reserve(doc["values"].size());
        for (const auto& v : doc["values"]) {
            if (!v.is_number()) throw Error(ErrorKind::ParseError, "'values' must contain only numbers");
            values.push_back(v.get<double>());
        }
        return Spectrum::custom_table(std::move(values));
    }();

    if (doc.contains("name")) spec = spec.with_name(doc["name"].get<std::string>());
    if (doc.contains("description")) spec = spec.with_description(doc["description"].get<std::string>());
    return spec;
}

Spectrum load_spectrum_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, fmt::format("cannot open spectrum file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_spectrum(buf.str());
}

Spectrum resolve_spectrum(std::string_view name_or_path, double nu, double gamma_iso) {
    if (name_or_path == "hydrogen_like" || name_or_path == "hydrogen") return Spectrum::hydrogen_like();
    if (name_or_path == "poschl_teller") return Spectrum::poschl_teller(nu);
    if (name_or_path == "isotonic") return Spectrum::isotonic(gamma_iso);
    const std::filesystem::path path(name_or_path);
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("'{}' is neither a built-in spectrum nor a readable file", name_or_path));
    }
    return load_spectrum_file(path);
}

}  // namespace phasekit
