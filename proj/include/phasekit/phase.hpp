// phase.hpp: Pegg-Barnett phase states and the continuum phase distribution P(theta).

#pragma once

#include "phasekit/states.hpp"

#include <cstddef>
#include <numbers>
#include <vector>

namespace phasekit {

// Uniform periodic grid theta_j = theta0 + 2 pi j / m_points, j = 0..m_points-1.
struct PhaseGrid {
    double theta0 = -std::numbers::pi;
    std::size_t m_points = 4096;

    double spacing() const noexcept { return 2.0 * std::numbers::pi / static_cast<double>(m_points); }
    double node(std::size_t j) const noexcept {
        return theta0 + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m_points);
    }
    void validate() const;
};

struct PhaseDistribution {
    PhaseGrid grid;
    std::vector<double> values;  // P(theta_j) >= 0
    double tau = 0.0;
};

// |<theta_m|psi>|^2 for the s+1 phase states theta_m = theta0 + 2 pi m/(s+1). Requires s >= n_max.
std::vector<double> finite_s_phase_probs(const CoherentState& state, std::size_t s, double theta0);

// (s+1)/(2 pi) |<theta_m|psi>|^2 at the phase state theta_m nearest to theta; tends to P(theta) as s grows.
double pegg_barnett_density(const CoherentState& state, std::size_t s, double theta0, double theta);

// (1/2pi) |sum_n c_n e^{-i n theta}|^2 at one angle.
double phase_density(const CoherentState& state, double theta);

// Modulus-squared evaluation; valid for complex z and any tau.
PhaseDistribution phase_distribution(const CoherentState& state, const PhaseGrid& grid = {});

// The double-sum cosine form with the product cos[(n-k)theta] cos[(e_n-e_k)tau], for real z.
// Kept for comparison against phase_distribution; it equals the average of the tau and -tau
// distributions, not the tau distribution itself.
PhaseDistribution phase_distribution_literal_gk(const CoherentState& state, const PhaseGrid& grid = {});

}  // namespace phasekit
