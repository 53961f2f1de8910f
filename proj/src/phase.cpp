#include "phasekit/phase.hpp"

#include "phasekit/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sum_n c_n w^n by Horner's rule, |w| = 1.
complex horner(std::span<const complex> c, complex w) {
    complex acc{};
    for (std::size_t n = c.size(); n-- > 0;) acc = acc * w + c[n];
    return acc;
}

}  // namespace

void PhaseGrid::validate() const {
    if (m_points == 0) throw Error(ErrorKind::InvalidArgument, "phase grid needs at least one node");
    if (!std::isfinite(theta0)) throw Error(ErrorKind::InvalidArgument, "theta0 must be finite");
}

std::vector<double> finite_s_phase_probs(const CoherentState& state, std::size_t s, double theta0) {
    if (s < state.n_max()) {
        throw Error(ErrorKind::SubspaceTooSmall,
                    fmt::format("s = {} cannot hold a state with n_max = {}", s, state.n_max()));
    }
    const auto dim = static_cast<double>(s + 1);
    std::vector<double> probs(s + 1);
    for (std::size_t m = 0; m <= s; ++m) {
        const double theta = theta0 + kTwoPi * static_cast<double>(m) / dim;
        probs[m] = std::norm(horner(state.coeffs(), std::polar(1.0, -theta))) / dim;
    }
    return probs;
}

double pegg_barnett_density(const CoherentState& state, std::size_t s, double theta0, double theta) {
    if (s < state.n_max()) {
        throw Error(ErrorKind::SubspaceTooSmall,
                    fmt::format("s = {} cannot hold a state with n_max = {}", s, state.n_max()));
    }
    const auto dim = static_cast<double>(s + 1);
    const double step = kTwoPi / dim;
    auto m = static_cast<long long>(std::llround((theta - theta0) / step));
    m %= static_cast<long long>(s + 1);
    if (m < 0) m += static_cast<long long>(s + 1);
    const double theta_m = theta0 + kTwoPi * static_cast<double>(m) / dim;
    return std::norm(horner(state.coeffs(), std::polar(1.0, -theta_m))) / kTwoPi;
}

double phase_density(const CoherentState& state, double theta) {
    return std::norm(horner(state.coeffs(), std::polar(1.0, -theta))) / kTwoPi;
}

PhaseDistribution phase_distribution(const CoherentState& state, const PhaseGrid& grid) {
    grid.validate();
    PhaseDistribution out{grid, std::vector<double>(grid.m_points), state.tau()};
    for (std::size_t j = 0; j < grid.m_points; ++j) out.values[j] = phase_density(state, grid.node(j));
    return out;
}

PhaseDistribution phase_distribution_literal_gk(const CoherentState& state, const PhaseGrid& grid) {
    grid.validate();
    const complex z = state.z();
    if (z.imag() != 0.0) {
        throw Error(ErrorKind::ComplexAmplitudeUnsupported,
                    fmt::format("the cosine form assumes real z (got Im z = {})", z.imag()));
    }
    // N_e^{-1} z^n z^k / sqrt([e_n]![e_k]!) = a_n a_k with a_n = sign(z)^n sqrt(P(n)).
    const auto probs = state.probabilities();
    const auto energies = state.energies();
    const std::size_t count = probs.size();
    std::vector<double> a(count);
    for (std::size_t n = 0; n < count; ++n) {
        a[n] = std::sqrt(probs[n]) * ((z.real() < 0.0 && n % 2 == 1) ? -1.0 : 1.0);
    }
    // Group the pairs k < n by d = n - k; each group multiplies cos(d theta).
    const double tau = state.tau();
    std::vector<double> weight(count, 0.0);
    for (std::size_t n = 1; n < count; ++n) {
        for (std::size_t k = 0; k < n; ++k) {
            weight[n - k] += a[n] * a[k] * std::cos((energies[n] - energies[k]) * tau);
        }
    }
    PhaseDistribution out{grid, std::vector<double>(grid.m_points), tau};
    for (std::size_t j = 0; j < grid.m_points; ++j) {
        const double theta = grid.node(j);
        double acc = 0.0;
        for (std::size_t d = 1; d < count; ++d) acc += weight[d] * std::cos(static_cast<double>(d) * theta);
        out.values[j] = (1.0 + 2.0 * acc) / kTwoPi;
    }
    return out;
}

}  // namespace phasekit
