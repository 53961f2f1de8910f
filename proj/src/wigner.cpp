#include "phasekit/wigner.hpp"

#include "phasekit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

complex coeff_or_zero(std::span<const complex> c, long long k) {
    return (k >= 0 && static_cast<std::size_t>(k) < c.size()) ? c[static_cast<std::size_t>(k)] : complex{};
}

}  // namespace

double wigner_value(const CoherentState& state, std::size_t n, double theta) {
    const auto c = state.coeffs();
    const auto nn = static_cast<long long>(n);
    complex acc{};
    for (long long p = -nn; p <= nn; ++p) {
        acc += std::conj(coeff_or_zero(c, nn + p)) * coeff_or_zero(c, nn - p) *
               std::polar(1.0, 2.0 * static_cast<double>(p) * theta);
    }
    for (long long p = -nn; p <= nn - 1; ++p) {
        acc += std::conj(coeff_or_zero(c, nn + p)) * coeff_or_zero(c, nn - p - 1) *
               std::polar(1.0, static_cast<double>(2 * p + 1) * theta);
    }
    acc /= kTwoPi;
    if (std::abs(acc.imag()) > kHermiticityTolerance) {
        throw Error(ErrorKind::HermiticityViolation,
                    fmt::format("W({}, {:.6g}) has imaginary part {:.3g}", n, theta, acc.imag()));
    }
    return acc.real();
}

std::size_t default_display_rows(const CoherentState& state) {
    const auto probs = state.probabilities();
    double cumulative = 0.0;
    std::size_t n = 0;
    for (; n < probs.size(); ++n) {
        cumulative += probs[n];
        if (cumulative >= 1.0 - 1e-6) break;
    }
    return std::clamp<std::size_t>(n, 1, kMaxDisplayRows);
}

WignerGrid wigner_grid(const CoherentState& state, std::size_t n_display, const PhaseGrid& grid) {
    if (n_display == 0) throw Error(ErrorKind::InvalidArgument, "n_display must be at least 1");
    grid.validate();
    const auto c = state.coeffs();
    const std::size_t m = grid.m_points;

    WignerGrid wg;
    wg.n_display = n_display;
    wg.grid = grid;
    wg.tau = state.tau();
    wg.values.resize((n_display + 1) * m);

    // Row n as a Laurent polynomial in u = e^{i theta}: coefficient d_q of u^q is c*_j c_k with
    // j = n + floor(q/2), k = n - ceil(q/2); d_{-q} = conj(d_q), so W = (|c_n|^2 + 2 Re sum_{q>=1} d_q u^q) / 2pi.
    std::vector<complex> d;
    for (std::size_t n = 0; n <= n_display; ++n) {
        const auto nn = static_cast<long long>(n);
        d.assign(2 * n + 1, complex{});
        for (std::size_t q = 1; q <= 2 * n; ++q) {
            const auto lo = static_cast<long long>(q / 2);
            const auto hi = static_cast<long long>((q + 1) / 2);
            d[q] = std::conj(coeff_or_zero(c, nn + lo)) * coeff_or_zero(c, nn - hi);
        }
        const double diag = std::norm(coeff_or_zero(c, nn));
        double* row = wg.values.data() + n * m;
        for (std::size_t j = 0; j < m; ++j) {
            const complex u = std::polar(1.0, grid.node(j));
            complex acc{};
            for (std::size_t q = 2 * n; q >= 1; --q) acc = (acc + d[q]) * u;
            row[j] = (diag + 2.0 * acc.real()) / kTwoPi;
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    wg.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n <= n_display; ++n) {
        for (std::size_t j = 0; j < m; ++j) {
            const double w = wg.at(n, j);
            if (w > best) {
                best = w;
                wg.peak_n = n;
                wg.peak_j = j;
                wg.peak_theta = grid.node(j);
            }
            wg.min_value = std::min(wg.min_value, w);
        }
    }
    return wg;
}

WignerGrid wigner_grid(const CoherentState& state, const PhaseGrid& grid) {
    return wigner_grid(state, default_display_rows(state), grid);
}

WignerMarginals wigner_marginals(const WignerGrid& wg) {
    const std::size_t m = wg.grid.m_points;
    WignerMarginals out{std::vector<double>(wg.n_display + 1, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t n = 0; n <= wg.n_display; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            acc += wg.at(n, j);
            out.phase[j] += wg.at(n, j);
        }
        out.number[n] = acc * wg.grid.spacing();
    }
    return out;
}

NegativityReport negativity_report(const WignerGrid& wg) {
    NegativityReport r;
    r.min_value = std::numeric_limits<double>::infinity();
    std::size_t negative = 0;
    const std::size_t m = wg.grid.m_points;
    for (std::size_t n = 0; n <= wg.n_display; ++n) {
        for (std::size_t j = 0; j < m; ++j) {
            const double w = wg.at(n, j);
            if (w < r.min_value) {
                r.min_value = w;
                r.n = n;
                r.theta = wg.grid.node(j);
            }
            if (w < -kNegativityThreshold) ++negative;
        }
    }
    r.negative_fraction = static_cast<double>(negative) / static_cast<double>(wg.values.size());
    return r;
}

}  // namespace phasekit
