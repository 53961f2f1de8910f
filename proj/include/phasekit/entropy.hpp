// entropy.hpp: number and phase entropies and the bound R_phi + R_n >= ln(2 pi).
//
// Entropies are in nats. R_n is the Shannon entropy of P(n) (unit level spacing), R_phi the
// differential entropy of P(theta) over one period, computed with the periodic trapezoid rule.

#pragma once

#include "phasekit/phase.hpp"
#include "phasekit/states.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace phasekit {

inline const double kEntropyBound = std::log(2.0 * std::numbers::pi);
inline constexpr double kQuadratureTolerance = 1e-6;
// Probabilities at or below this contribute 0 (x ln x -> 0).
inline constexpr double kProbabilityFloor = 1e-300;

struct EntropyReport {
    double r_n = 0.0;
    double r_phi = 0.0;
    double sum = 0.0;
    double bound = kEntropyBound;
    double margin = 0.0;  // sum - bound; >= 0 up to quadrature error
    complex z{};
    double tau = 0.0;
    std::string spectrum_name;
};

enum class ScanAxis { z_real, tau };

struct EntropyOptions {
    PhaseGrid grid{};
    double tol = kDefaultTolerance;
    // Recompute R_phi on a doubled grid and fail with QuadratureUnreliable on disagreement.
    bool check_refinement = false;
};

struct ScanTable {
    ScanAxis axis = ScanAxis::z_real;
    std::vector<EntropyReport> rows;  // strictly ordered along the axis
    std::string spectrum_name;
    complex fixed_z{};       // tau scans
    double fixed_tau = 0.0;  // z scans
    EntropyOptions options;
};

double shannon_entropy(std::span<const double> probs);
double number_entropy(const CoherentState& state);
double phase_entropy(const PhaseDistribution& dist);
// phase_entropy on `grid` checked against a grid with twice the nodes.
double phase_entropy_checked(const CoherentState& state, const PhaseGrid& grid);

EntropyReport entropy_report(const CoherentState& state, const EntropyOptions& options = {});
EntropyReport entropy_report(const Spectrum& spec, complex z, double tau, const EntropyOptions& options = {});

ScanTable entropy_scan_z(const Spectrum& spec, std::span<const double> z_values, double tau,
                         const EntropyOptions& options = {});
ScanTable entropy_scan_tau(const Spectrum& spec, complex z, std::span<const double> tau_values,
                           const EntropyOptions& options = {});

}  // namespace phasekit
