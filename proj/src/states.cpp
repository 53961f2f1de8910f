#include "phasekit/states.hpp"

#include "phasekit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace phasekit {

namespace {

double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// Two-pass log-sum-exp over the collected terms.
double log_sum_exp(std::span<const double> xs) {
    const double top = *std::max_element(xs.begin(), xs.end());
    double sum = 0.0;
    double carry = 0.0;
    for (double x : xs) {
        const double y = std::exp(x - top) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return top + std::log(sum);
}

void check_domain(const Spectrum& spec, double r2) {
    if (!std::isfinite(r2) || r2 < 0.0) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("|z|^2 must be finite and >= 0 (got {})", r2));
    }
    const double radius = convergence_radius(spec);
    if (!std::isinf(radius) && r2 >= radius * radius) {
        throw Error(ErrorKind::OutOfDomain,
                    fmt::format("|z| = {:.12g} is outside the convergence disk of radius {:.12g} for {}",
                                std::sqrt(r2), radius, spec.name()));
    }
}

}  // namespace

namespace detail {

SeriesSum sum_series(const Spectrum& spec, double r2, double stop_tol) {
    check_domain(spec, r2);
    SeriesSum out;
    if (r2 == 0.0) {
        out.log_terms = {0.0};
        return out;
    }

    constexpr int kRun = 10;
    const double lr = std::log(r2);
    const double small = std::log(stop_tol * 1e-2);
    const auto levels = spec.level_count();
    const auto top = spec.max_index();

    double running = -std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
        if (top && n > *top) {
            if (levels) {
                // Complete finite-level system: nothing beyond the last level.
                out.log_sum = log_sum_exp(out.log_terms);
                out.tail = 0.0;
                return out;
            }
            throw Error(ErrorKind::NonConvergentSeries,
                        fmt::format("spectrum table '{}' exhausted after {} terms at |z| = {:.12g}", spec.name(),
                                    n, std::sqrt(r2)));
        }
        const double lt = static_cast<double>(n) * lr - spec.log_factorial(n);
        out.log_terms.push_back(lt);
        running = log_add(running, lt);
        quiet = (lt - running <= small) ? quiet + 1 : 0;
        if (quiet < kRun) continue;

        // Largest term ratio t_k / t_{k-1} over the quiet run.
        double log_q = -std::numeric_limits<double>::infinity();
        for (std::size_t k = n + 1 - kRun; k <= n; ++k) {
            log_q = std::max(log_q, out.log_terms[k] - out.log_terms[k - 1]);
        }
        if (log_q >= 0.0) continue;

        out.log_sum = log_sum_exp(out.log_terms);
        if (top && n + 1 > *top) {
            if (!levels) {
                throw Error(ErrorKind::NonConvergentSeries,
                            fmt::format("spectrum table '{}' too short to certify the tail", spec.name()));
            }
            out.tail = 0.0;
        } else {
            const double next = lt + lr - spec.log_energy(n + 1);
            out.tail = std::exp(next - out.log_sum) / -std::expm1(log_q);
        }
        return out;
    }
    throw Error(ErrorKind::NonConvergentSeries,
                fmt::format("no convergence within {} terms at |z| = {:.12g} for {}", kMaxSeriesTerms,
                            std::sqrt(r2), spec.name()));
}

}  // namespace detail

double normalization(const Spectrum& spec, double r2) { return detail::sum_series(spec, r2, 1e-16).log_sum; }

void CoherentState::fill_coeffs() {
    const double arg_z = (z_ == complex{}) ? 0.0 : std::arg(z_);
    coeffs_.resize(probs_.size());
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        const double phase = static_cast<double>(n) * arg_z - energies_[n] * tau_;
        coeffs_[n] = std::polar(std::sqrt(probs_[n]), phase);
    }
}

CoherentState build_state(const Spectrum& spec, complex z, double tau, double tol) {
    if (!(tol > 0.0 && tol < 1e-3)) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("tolerance must lie in (0, 1e-3) (got {})", tol));
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(tau)) {
        throw Error(ErrorKind::InvalidArgument, "z and tau must be finite");
    }
    const auto series = detail::sum_series(spec, std::norm(z), 1e-16);
    const std::size_t count = series.log_terms.size();

    std::vector<double> weight(count);
    for (std::size_t n = 0; n < count; ++n) weight[n] = std::exp(series.log_terms[n] - series.log_sum);

    // tail_after[n] bounds the mass beyond index n.
    std::size_t n_max = count - 1;
    double tail = series.tail;
    for (std::size_t n = count - 1; n > 0; --n) {
        const double next = tail + weight[n];
        if (next > tol) break;
        tail = next;
        n_max = n - 1;
    }

    CoherentState s;
    s.spectrum_ = spec;
    s.z_ = z;
    s.tau_ = tau;
    s.log_norm_ = series.log_sum;
    s.tail_bound_ = tail;
    s.probs_.assign(weight.begin(), weight.begin() + static_cast<std::ptrdiff_t>(n_max + 1));
    s.energies_.resize(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) s.energies_[n] = spec.energy(n);
    s.fill_coeffs();
    return s;
}

std::vector<double> number_distribution(const CoherentState& state) {
    const auto p = state.probabilities();
    return {p.begin(), p.end()};
}

CoherentState evolve(const CoherentState& state, double dtau) {
    CoherentState s = state;
    s.tau_ = state.tau_ + dtau;
    s.fill_coeffs();
    return s;
}

}  // namespace phasekit
