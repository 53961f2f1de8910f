#include "phasekit/entropy.hpp"
#include "phasekit/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

using namespace phasekit;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reference values computed to 30 digits with mpmath.
constexpr double kPoissonOneEntropy = 1.304842242256251484;
constexpr double kRaisedCosineEntropy = 1.531024246969290793;  // ln 2pi + ln 2 - 1
constexpr double kTwoLevelSum = 2.224171427529236102;          // ln 2pi + 2 ln 2 - 1

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

double stddev_of_sum(const ScanTable& t) {
    double mean = 0.0;
    for (const auto& r : t.rows) mean += r.sum;
    mean /= static_cast<double>(t.rows.size());
    double var = 0.0;
    for (const auto& r : t.rows) var += (r.sum - mean) * (r.sum - mean);
    return std::sqrt(var / static_cast<double>(t.rows.size()));
}

}  // namespace

TEST_CASE("number entropy examples") {
    CHECK(number_entropy(build_state(Spectrum::isotonic(), 0.0, 0.0)) == 0.0);
    CHECK(number_entropy(build_state(Spectrum::custom_table({0.0, 1.0}), 1.0, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // the discarded tail (mass <= 1e-12) carries about 1e-11 nats
    CHECK(std::abs(number_entropy(build_state(Spectrum::isotonic(), 2.0, 0.0)) - kPoissonOneEntropy) <= 1e-10);

    const std::vector<double> with_zero = {0.5, 0.0, 0.5, 1e-320};
    CHECK(shannon_entropy(with_zero) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("phase entropy examples") {
    const PhaseGrid grid{};
    PhaseDistribution uniform{grid, std::vector<double>(grid.m_points, 1.0 / kTwoPi), 0.0};
    CHECK(std::abs(phase_entropy(uniform) - kEntropyBound) <= 1e-12);

    PhaseDistribution raised{grid, std::vector<double>(grid.m_points), 0.0};
    for (std::size_t j = 0; j < grid.m_points; ++j) raised.values[j] = (1.0 + std::cos(grid.node(j))) / kTwoPi;
    CHECK(std::abs(phase_entropy(raised) - kRaisedCosineEntropy) <= 1e-8);

    const auto vacuum = entropy_report(Spectrum::poschl_teller(5.0), 0.0, 0.0);
    CHECK(vacuum.r_n == 0.0);
    CHECK(std::abs(vacuum.r_phi - kEntropyBound) <= 1e-9);
}

TEST_CASE("entropy report examples") {
    for (const auto& spec : {Spectrum::hydrogen_like(), Spectrum::poschl_teller(5.0), Spectrum::isotonic()}) {
        const auto r = entropy_report(spec, 0.0, 0.0);
        CHECK(std::abs(r.sum - std::log(kTwoPi)) <= 1e-9);
        CHECK(std::abs(r.margin) <= 1e-9);
        CHECK(r.spectrum_name == spec.name());
    }

    const auto h = entropy_report(Spectrum::hydrogen_like(), 0.5, 0.0);
    CHECK(h.margin > 0.0);
    CHECK(h.sum == doctest::Approx(h.r_n + h.r_phi).epsilon(1e-15));
    CHECK(h.z == complex(0.5, 0.0));

    const auto two = entropy_report(Spectrum::custom_table({0.0, 1.0}), 1.0, 0.0);
    CHECK(std::abs(two.sum - kTwoLevelSum) <= 1e-8);
}

TEST_CASE("bound holds over random states") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<Spectrum> specs = {Spectrum::hydrogen_like(), Spectrum::poschl_teller(5.0),
                                         Spectrum::isotonic(), Spectrum::custom_affine(0.8)};
    for (int i = 0; i < 60; ++i) {
        const auto& spec = specs[static_cast<std::size_t>(i) % specs.size()];
        const double radius = std::min(convergence_radius(spec), 20.0 / 0.9) * 0.9;
        const auto r = entropy_report(spec, std::polar(radius * unit(rng), kTwoPi * unit(rng)), 10.0 * unit(rng));
        CAPTURE(i);
        CHECK(r.margin >= -kQuadratureTolerance);
    }
}

TEST_CASE("quadrature is stable under refinement") {
    const PhaseGrid base{};
    const PhaseGrid doubled{base.theta0, 2 * base.m_points};
    struct Case {
        Spectrum spec;
        double z;
    };
    const std::vector<Case> cases = {{Spectrum::hydrogen_like(), 0.9},
                                     {Spectrum::poschl_teller(5.0), 20.0},
                                     {Spectrum::isotonic(), 20.0}};
    for (const auto& c : cases) {
        for (double tau : {0.0, 2.3}) {
            const auto s = build_state(c.spec, c.z, tau);
            CHECK(std::abs(phase_entropy(phase_distribution(s, base)) - phase_entropy(phase_distribution(s, doubled))) <
                  1e-8);
            CHECK_NOTHROW(phase_entropy_checked(s, base));
        }
    }

    const auto wide = build_state(Spectrum::isotonic(), 20.0, 0.0);
    try {
        phase_entropy_checked(wide, PhaseGrid{-std::numbers::pi, 64});
        FAIL("coarse grid accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureUnreliable);
    }
    EntropyOptions checked;
    checked.grid.m_points = 64;
    checked.check_refinement = true;
    CHECK_THROWS_AS(entropy_report(wide, checked), Error);
}

TEST_CASE("phase entropy does not depend on the window") {
    const auto s = build_state(Spectrum::poschl_teller(5.0), complex(2.0, 1.0), 1.1);
    const double ref = phase_entropy(phase_distribution(s, PhaseGrid{-std::numbers::pi, 4096}));
    for (double theta0 : {0.0, 1.3}) {
        CHECK(std::abs(phase_entropy(phase_distribution(s, PhaseGrid{theta0, 4096})) - ref) <= 1e-10);
    }
}

TEST_CASE("linear spectra keep R_phi under evolution") {
    const auto spec = Spectrum::custom_affine(0.9);
    const double at0 = entropy_report(spec, complex(1.5, -0.5), 0.0).r_phi;
    for (double tau : {0.3, 1.7, 8.0}) {
        CHECK(std::abs(entropy_report(spec, complex(1.5, -0.5), tau).r_phi - at0) <= 1e-10);
    }
}

TEST_CASE("z scans") {
    const auto zs = linspace(0.1, 0.9, 9);
    const auto h = entropy_scan_z(Spectrum::hydrogen_like(), zs, 0.0);
    REQUIRE(h.rows.size() == zs.size());
    CHECK(h.axis == ScanAxis::z_real);
    for (std::size_t i = 1; i < h.rows.size(); ++i) {
        CAPTURE(i);
        CHECK(h.rows[i].r_n > h.rows[i - 1].r_n);
        CHECK(h.rows[i].r_phi < h.rows[i - 1].r_phi);
        CHECK(h.rows[i].z.real() == zs[i]);
    }

    const std::vector<double> wide = {0.0, 5.0, 20.0};
    const auto iso = entropy_scan_z(Spectrum::isotonic(), wide, 0.0);
    double best = -INFINITY;
    for (const auto& r : iso.rows) {
        CHECK(r.margin >= -kQuadratureTolerance);
        best = std::max(best, r.margin);
    }
    CHECK(iso.rows.back().margin < best);

    // descending order is fine, repeats and an empty axis are not
    const std::vector<double> down = {0.5, 0.4};
    CHECK(entropy_scan_z(Spectrum::hydrogen_like(), down, 0.0).rows.size() == 2);
    const std::vector<double> repeat = {0.1, 0.2, 0.2};
    CHECK_THROWS_AS(entropy_scan_z(Spectrum::hydrogen_like(), repeat, 0.0), Error);
    CHECK_THROWS_AS(entropy_scan_z(Spectrum::hydrogen_like(), std::vector<double>{}, 0.0), Error);

    const std::vector<double> crossing = {0.5, 0.9, 1.0};
    try {
        entropy_scan_z(Spectrum::hydrogen_like(), crossing, 0.0);
        FAIL("scan crossed the boundary");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfDomain);
        CHECK(std::string(e.what()).find("at z = 1") != std::string::npos);
    }
}

TEST_CASE("tau scans") {
    const auto taus = linspace(0.0, 5.0, 51);
    for (const auto& spec : {Spectrum::hydrogen_like(), Spectrum::poschl_teller(5.0), Spectrum::isotonic()}) {
        const auto t = entropy_scan_tau(spec, 0.7, taus);
        CHECK(t.axis == ScanAxis::tau);
        for (const auto& r : t.rows) CHECK(std::abs(r.r_n - t.rows.front().r_n) <= 1e-14);
    }

    for (double z : {2.0, 10.0, 20.0}) {
        const auto t = entropy_scan_tau(Spectrum::isotonic(), z, taus);
        const auto [lo, hi] = std::minmax_element(t.rows.begin(), t.rows.end(),
                                                  [](const auto& a, const auto& b) { return a.sum < b.sum; });
        CAPTURE(z);
        CHECK(hi->sum - lo->sum < 1e-6);
    }

    const auto long_taus = linspace(0.0, 30.0, 301);
    const double low = stddev_of_sum(entropy_scan_tau(Spectrum::hydrogen_like(), 0.3, long_taus));
    const double high = stddev_of_sum(entropy_scan_tau(Spectrum::hydrogen_like(), 0.8, long_taus));
    CHECK(low < high);
    CHECK(high > 1e-3);
}
