// states.hpp: truncated generalized coherent states |z, e_n> and their
// Gazeau-Klauder evolution |z, tau, e_n>.
//
//   c_n = N_e(|z|^2)^{-1/2} z^n exp(-i e_n tau) / sqrt([e_n]!),   N_e(r2) = sum_n r2^n / [e_n]!
//
// tau is the dimensionless evolution time (hbar = omega = 1).

#pragma once

#include "phasekit/spectra.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace phasekit {

using complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr std::size_t kMaxSeriesTerms = 10000;

class CoherentState {
public:
    const Spectrum& spectrum() const noexcept { return spectrum_; }
    complex z() const noexcept { return z_; }
    double tau() const noexcept { return tau_; }
    std::size_t n_max() const noexcept { return coeffs_.size() - 1; }
    std::span<const complex> coeffs() const noexcept { return coeffs_; }
    // |c_n|^2, independent of tau.
    std::span<const double> probabilities() const noexcept { return probs_; }
    std::span<const double> energies() const noexcept { return energies_; }
    double log_norm() const noexcept { return log_norm_; }
    // Certified upper bound on the probability mass beyond n_max.
    double tail_bound() const noexcept { return tail_bound_; }

private:
    friend CoherentState build_state(const Spectrum&, complex, double, double);
    friend CoherentState evolve(const CoherentState&, double);

    CoherentState() = default;
    void fill_coeffs();

    Spectrum spectrum_ = Spectrum::hydrogen_like();
    complex z_{};
    double tau_{0.0};
    std::vector<complex> coeffs_;
    std::vector<double> probs_;
    std::vector<double> energies_;
    double log_norm_{0.0};
    double tail_bound_{0.0};
};

namespace detail {

// Log-domain partial sum of r2^n / [e_n]! with a certified relative tail.
struct SeriesSum {
    std::vector<double> log_terms;  // ln(r2^n / [e_n]!), n = 0..N
    double log_sum{0.0};            // ln of the sum over 0..N
    double tail{0.0};               // bound on (sum over n > N) / exp(log_sum)
};

// Stops once t_n / sum <= stop_tol * 1e-2 for 10 consecutive n and the largest term
// ratio q over those n is below 1; the tail is then t_{N+1} / (1 - q).
SeriesSum sum_series(const Spectrum& spec, double r2, double stop_tol);

}  // namespace detail

// ln N_e(r2), relative tail below 1e-16.
double normalization(const Spectrum& spec, double r2);

// n_max is the smallest index whose certified tail mass is <= tol; 0 < tol < 1e-3.
CoherentState build_state(const Spectrum& spec, complex z, double tau = 0.0, double tol = kDefaultTolerance);

std::vector<double> number_distribution(const CoherentState& state);

// Applies exp(-i H dtau): c_n picks up exp(-i e_n dtau); tau becomes tau + dtau.
CoherentState evolve(const CoherentState& state, double dtau);

}  // namespace phasekit
