#include "phasekit/error.hpp"
#include "phasekit/wigner.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace phasekit;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cld = std::complex<long double>;

// Matrix of the Wigner operator at (n, theta) in the Fock basis |0>..|dim-1>.
std::vector<std::vector<cld>> wigner_operator(std::size_t n, long double theta, std::size_t dim) {
    std::vector<std::vector<cld>> m(dim, std::vector<cld>(dim));
    const auto nn = static_cast<long long>(n);
    auto put = [&](long long row, long long col, long double angle) {
        if (row < 0 || col < 0 || row >= static_cast<long long>(dim) || col >= static_cast<long long>(dim)) return;
        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] +=
            cld(std::cos(angle), std::sin(angle)) / (2.0L * std::numbers::pi_v<long double>);
    };
    for (long long p = -nn; p <= nn; ++p) put(nn + p, nn - p, 2.0L * static_cast<long double>(p) * theta);
    for (long long p = -nn; p < nn; ++p) put(nn + p, nn - p - 1, static_cast<long double>(2 * p + 1) * theta);
    return m;
}

cld expectation(const std::vector<std::vector<cld>>& m, std::span<const complex> c) {
    cld acc = 0.0L;
    for (std::size_t j = 0; j < c.size(); ++j) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            acc += std::conj(cld(c[j].real(), c[j].imag())) * m[j][k] * cld(c[k].real(), c[k].imag());
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("vacuum") {
    const auto s = build_state(Spectrum::isotonic(), 0.0, 0.0);
    for (double theta : {-3.0, 0.0, 1.0, 2.5}) {
        CHECK(wigner_value(s, 0, theta) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
        CHECK(wigner_value(s, 1, theta) == 0.0);
        CHECK(wigner_value(s, 5, theta) == 0.0);
    }
    const auto wg = wigner_grid(s, 4, PhaseGrid{-std::numbers::pi, 128});
    const auto marg = wigner_marginals(wg);
    CHECK(marg.number[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t n = 1; n <= 4; ++n) CHECK(marg.number[n] == 0.0);
    for (double v : marg.phase) CHECK(v == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));

    const auto neg = negativity_report(wg);
    CHECK(std::abs(neg.min_value) <= 1e-12);
    CHECK(neg.negative_fraction == 0.0);
    CHECK(default_display_rows(s) == 1);
}

TEST_CASE("operator-matrix oracle") {
    struct Case {
        Spectrum spec;
        complex z;
        double tau;
    };
    const std::vector<Case> cases = {
        {Spectrum::hydrogen_like(), 0.1, 0.0},
        {Spectrum::hydrogen_like(), complex(0.05, 0.08), 1.7},
        {Spectrum::poschl_teller(5.0), 1.0, 0.0},
        {Spectrum::poschl_teller(5.0), complex(-0.5, 1.2), 0.3},
        {Spectrum::isotonic(), 0.5, 2.2},
        {Spectrum::custom_table({0.0, 1.0, 1.5}), complex(0.9, -0.4), 4.0},
    };
    for (const auto& c : cases) {
        const auto s = build_state(c.spec, c.z, c.tau);
        REQUIRE(s.n_max() <= 8);
        const std::size_t dim = 2 * s.n_max() + 3;
        for (std::size_t n = 0; n <= s.n_max() + 1; ++n) {
            for (double theta : {-2.9, -0.4, 0.0, 0.77, 3.1}) {
                const auto m = wigner_operator(n, theta, dim);
                // Hermitian by construction of the pairings
                for (std::size_t j = 0; j < dim; ++j) {
                    for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(m[j][k] - std::conj(m[k][j])) <= 1e-18L);
                }
                const cld want = expectation(m, s.coeffs());
                CHECK(std::abs(static_cast<double>(want.imag())) <= 1e-15);
                CHECK(std::abs(wigner_value(s, n, theta) - static_cast<double>(want.real())) <= 1e-12);
            }
        }
    }
}

TEST_CASE("grid agrees with pointwise evaluation") {
    const auto s = build_state(Spectrum::poschl_teller(5.0), complex(3.0, 2.0), 0.6);
    const PhaseGrid grid{-1.0, 200};
    const auto wg = wigner_grid(s, 12, grid);
    REQUIRE(wg.values.size() == 13 * 200);
    for (std::size_t n = 0; n <= 12; ++n) {
        for (std::size_t j = 0; j < grid.m_points; j += 7) {
            CHECK(std::abs(wg.at(n, j) - wigner_value(s, n, grid.node(j))) <= 1e-13);
        }
    }
    CHECK(wg.tau == 0.6);
    CHECK(wg.at(wg.peak_n, wg.peak_j) == *std::max_element(wg.values.begin(), wg.values.end()));
    CHECK(wg.min_value == *std::min_element(wg.values.begin(), wg.values.end()));
    CHECK_THROWS_AS(wigner_grid(s, 0, grid), Error);
}

TEST_CASE("peaks and negativity of the reference states") {
    const auto h = wigner_grid(build_state(Spectrum::hydrogen_like(), 0.5, 0.0));
    CHECK(h.peak_n == 1);
    CHECK(std::abs(h.peak_theta) <= h.grid.spacing());
    CHECK(h.min_value < 0.0);
    CHECK(negativity_report(h).negative_fraction > 0.0);

    const auto pt = wigner_grid(build_state(Spectrum::poschl_teller(5.0), 5.0, 0.0));
    CHECK(pt.peak_n == 3);
    CHECK(std::abs(pt.peak_theta) <= pt.grid.spacing());
    CHECK(pt.min_value < 0.0);

    // For e_n = 4n at z = 5 the maximum along theta = 0 sits on row 7, just above row 6.
    // Values from an independent 30-digit evaluation of the two sums.
    const auto iso_state = build_state(Spectrum::isotonic(), 5.0, 0.0);
    CHECK(wigner_value(iso_state, 6, 0.0) == doctest::Approx(0.304609).epsilon(1e-5));
    CHECK(wigner_value(iso_state, 7, 0.0) == doctest::Approx(0.306215).epsilon(1e-5));
    const auto iso = wigner_grid(iso_state);
    CHECK(iso.peak_n == 7);
    CHECK(std::abs(iso.peak_theta) <= iso.grid.spacing());
    CHECK(iso.min_value < 0.0);
}

TEST_CASE("two-level interference row") {
    const auto s = build_state(Spectrum::custom_table({0.0, 1.0}), 1.0, 0.0);
    for (double theta : {-2.0, 0.0, 1.0, std::numbers::pi}) {
        CHECK(std::abs(wigner_value(s, 1, theta) - (0.5 + std::cos(theta)) / kTwoPi) <= 1e-15);
    }
    const auto neg = negativity_report(wigner_grid(s, 1, PhaseGrid{-std::numbers::pi, 1024}));
    CHECK(neg.min_value == doctest::Approx(-1.0 / (4.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(neg.n == 1);
    CHECK(std::abs(std::abs(neg.theta) - std::numbers::pi) <= 1e-12);
    CHECK(neg.negative_fraction > 0.0);
    CHECK(neg.negative_fraction < 0.5);
}

TEST_CASE("marginals") {
    const PhaseGrid grid{-std::numbers::pi, 1024};
    const auto poisson = build_state(Spectrum::isotonic(), 2.0, 0.0);
    const auto m = wigner_marginals(wigner_grid(poisson, poisson.n_max(), grid));
    double factorial = 1.0;
    for (std::size_t n = 0; n <= poisson.n_max(); ++n) {
        if (n > 0) factorial *= static_cast<double>(n);
        CHECK(std::abs(m.number[n] - std::exp(-1.0) / factorial) <= 1e-8);
    }

    struct Case {
        Spectrum spec;
        complex z;
        double tau;
    };
    const std::vector<Case> cases = {
        {Spectrum::hydrogen_like(), 0.5, 0.0},
        {Spectrum::hydrogen_like(), complex(0.3, 0.6), 5.0},
        {Spectrum::poschl_teller(5.0), 5.0, 1.3},
        {Spectrum::isotonic(), complex(-2.0, 3.0), 0.9},
    };
    for (const auto& c : cases) {
        const auto s = build_state(c.spec, c.z, c.tau);
        const auto wg = wigner_grid(s, s.n_max(), grid);
        const auto marg = wigner_marginals(wg);
        const auto p = s.probabilities();
        for (std::size_t n = 0; n <= s.n_max(); ++n) CHECK(std::abs(marg.number[n] - p[n]) <= 1e-8);
        const auto d = phase_distribution(s, grid);
        for (std::size_t j = 0; j < grid.m_points; ++j) {
            CHECK(std::abs(marg.phase[j] - d.values[j]) <= s.tail_bound() + 1e-8);
        }

        // number marginal depends on |c_n| only
        const auto at0 = wigner_marginals(wigner_grid(build_state(c.spec, c.z, 0.0), s.n_max(), grid));
        for (std::size_t n = 0; n <= s.n_max(); ++n) CHECK(std::abs(marg.number[n] - at0.number[n]) <= 1e-8);
    }
}

TEST_CASE("real amplitudes at tau = 0 give an even function of theta") {
    const auto s = build_state(Spectrum::poschl_teller(5.0), 4.0, 0.0);
    for (std::size_t n = 0; n < 8; ++n) {
        for (double theta : {0.3, 1.1, 2.9}) {
            CHECK(std::abs(wigner_value(s, n, theta) - wigner_value(s, n, -theta)) <= 1e-14);
        }
    }
    const auto evolved = build_state(Spectrum::poschl_teller(5.0), 4.0, 0.4);
    double asym = 0.0;
    for (std::size_t n = 0; n < 8; ++n) asym = std::max(asym, std::abs(wigner_value(evolved, n, 0.5) - wigner_value(evolved, n, -0.5)));
    CHECK(asym > 1e-3);
}

TEST_CASE("linear spectra shift the Wigner function rigidly") {
    const double c = 2.0;
    const auto spec = Spectrum::custom_affine(c);
    const auto at0 = build_state(spec, complex(1.5, 0.5), 0.0);
    const PhaseGrid grid{-std::numbers::pi, 90};
    for (double tau : {0.25, 3.0}) {
        const auto wg = wigner_grid(build_state(spec, complex(1.5, 0.5), tau), 10, grid);
        for (std::size_t n = 0; n <= 10; ++n) {
            for (std::size_t j = 0; j < grid.m_points; ++j) {
                CHECK(std::abs(wg.at(n, j) - wigner_value(at0, n, grid.node(j) + c * tau)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("default display rows") {
    const auto s = build_state(Spectrum::isotonic(), 2.0, 0.0);
    const std::size_t rows = default_display_rows(s);
    const auto p = s.probabilities();
    double below = 0.0;
    for (std::size_t n = 0; n < rows; ++n) below += p[n];
    CHECK(below < 1.0 - 1e-6);
    CHECK(below + p[rows] >= 1.0 - 1e-6);
    CHECK(default_display_rows(build_state(Spectrum::isotonic(), 60.0, 0.0)) == kMaxDisplayRows);
}
