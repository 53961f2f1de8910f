#include "phasekit/entropy.hpp"

#include "phasekit/error.hpp"
#include "phasekit/parallel.hpp"

#include <fmt/format.h>

#include <cmath>

namespace phasekit {

namespace {

double x_log_x(double x) { return x <= kProbabilityFloor ? 0.0 : x * std::log(x); }

void require_strictly_monotone(std::span<const double> xs, const char* axis) {
    if (xs.empty()) throw Error(ErrorKind::InvalidArgument, fmt::format("{} scan needs at least one value", axis));
    if (xs.size() < 2) return;
    const bool up = xs[1] > xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (up ? !(xs[i] > xs[i - 1]) : !(xs[i] < xs[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, fmt::format("{} values must be strictly ordered", axis));
        }
    }
}

}  // namespace

double shannon_entropy(std::span<const double> probs) {
    double acc = 0.0;
    for (double p : probs) acc -= x_log_x(p);
    return acc;
}

double number_entropy(const CoherentState& state) { return shannon_entropy(state.probabilities()); }

double phase_entropy(const PhaseDistribution& dist) {
    double acc = 0.0;
    for (double p : dist.values) acc -= x_log_x(p);
    return acc * dist.grid.spacing();
}

double phase_entropy_checked(const CoherentState& state, const PhaseGrid& grid) {
    const double coarse = phase_entropy(phase_distribution(state, grid));
    const double fine = phase_entropy(phase_distribution(state, PhaseGrid{grid.theta0, 2 * grid.m_points}));
    if (std::abs(fine - coarse) > kQuadratureTolerance) {
        throw Error(ErrorKind::QuadratureUnreliable,
                    fmt::format("R_phi moved by {:.3g} when the grid doubled from {} nodes", fine - coarse,
                                grid.m_points));
    }
    return coarse;
}

EntropyReport entropy_report(const CoherentState& state, const EntropyOptions& options) {
    EntropyReport r;
    r.r_n = number_entropy(state);
    r.r_phi = options.check_refinement ? phase_entropy_checked(state, options.grid)
                                       : phase_entropy(phase_distribution(state, options.grid));
    r.sum = r.r_n + r.r_phi;
    r.margin = r.sum - r.bound;
    r.z = state.z();
    r.tau = state.tau();
    r.spectrum_name = state.spectrum().name();
    return r;
}

EntropyReport entropy_report(const Spectrum& spec, complex z, double tau, const EntropyOptions& options) {
    return entropy_report(build_state(spec, z, tau, options.tol), options);
}

ScanTable entropy_scan_z(const Spectrum& spec, std::span<const double> z_values, double tau,
                         const EntropyOptions& options) {
    require_strictly_monotone(z_values, "z");
    ScanTable table{ScanAxis::z_real, std::vector<EntropyReport>(z_values.size()), spec.name(), complex{}, tau, options};
    parallel_for(z_values.size(), [&](std::size_t i) {
        try {
            table.rows[i] = entropy_report(spec, complex{z_values[i], 0.0}, tau, options);
        } catch (const Error& e) {
            throw Error(e.kind(), fmt::format("at z = {:.12g}: {}", z_values[i], e.detail()));
        }
    });
    return table;
}

ScanTable entropy_scan_tau(const Spectrum& spec, complex z, std::span<const double> tau_values,
                           const EntropyOptions& options) {
    require_strictly_monotone(tau_values, "tau");
    const CoherentState base = build_state(spec, z, 0.0, options.tol);
    ScanTable table{ScanAxis::tau, std::vector<EntropyReport>(tau_values.size()), spec.name(), z, 0.0, options};
    parallel_for(tau_values.size(), [&](std::size_t i) {
        try {
            table.rows[i] = entropy_report(evolve(base, tau_values[i]), options);
        } catch (const Error& e) {
            throw Error(e.kind(), fmt::format("at tau = {:.12g}: {}", tau_values[i], e.detail()));
        }
    });
    return table;
}

}  // namespace phasekit
