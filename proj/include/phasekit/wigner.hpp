// wigner.hpp: number-phase Wigner function W(n, theta) of a (possibly evolved) coherent state.
//
//   W(n, theta) = (1/2pi) [ sum_{p=-n}^{n}   c*_{n+p} c_{n-p}   e^{2ip theta}
//                         + sum_{p=-n}^{n-1} c*_{n+p} c_{n-p-1} e^{i(2p+1) theta} ]
//
// The second sum is empty for n = 0. Evolution phases enter through the coefficients.

#pragma once

#include "phasekit/phase.hpp"
#include "phasekit/states.hpp"

#include <cstddef>
#include <vector>

namespace phasekit {

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kNegativityThreshold = 1e-12;
inline constexpr std::size_t kMaxDisplayRows = 64;

struct WignerGrid {
    std::size_t n_display = 0;  // rows n = 0..n_display
    PhaseGrid grid;
    std::vector<double> values;  // row-major, (n_display + 1) x grid.m_points
    std::size_t peak_n = 0;
    std::size_t peak_j = 0;
    double peak_theta = 0.0;
    double min_value = 0.0;
    double tau = 0.0;

    double at(std::size_t n, std::size_t j) const { return values[n * grid.m_points + j]; }
};

struct WignerMarginals {
    std::vector<double> number;  // (2pi/M) sum_j W(n, theta_j), compare with P(n)
    std::vector<double> phase;   // sum_n W(n, theta_j), compare with P(theta_j)
};

struct NegativityReport {
    double min_value = 0.0;
    std::size_t n = 0;
    double theta = 0.0;
    double negative_fraction = 0.0;  // cells with W < -kNegativityThreshold
};

// Direct evaluation of both sums; throws HermiticityViolation if the imaginary part exceeds 1e-12.
double wigner_value(const CoherentState& state, std::size_t n, double theta);

// Smallest n whose cumulative number probability reaches 1 - 1e-6, clamped to [1, 64].
std::size_t default_display_rows(const CoherentState& state);

WignerGrid wigner_grid(const CoherentState& state, std::size_t n_display, const PhaseGrid& grid = {});
WignerGrid wigner_grid(const CoherentState& state, const PhaseGrid& grid = {});

WignerMarginals wigner_marginals(const WignerGrid& wg);

NegativityReport negativity_report(const WignerGrid& wg);

}  // namespace phasekit
