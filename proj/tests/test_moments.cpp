#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chd/click.hpp"
#include "chd/errors.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/moments.hpp"
#include "chd/numerics.hpp"

using namespace chd;

namespace {

MomentSet counts_route(const FockVector& sig, const LocalOscillator& lo,
                       const DetectorConfig& cfg, int max_order, double eps) {
    const TwoModeState two = mix_on_beamsplitter(sig, lo, eps);
    const JointPhotonDistribution joint(two);
    return moments_from_counts(joint_click_distribution(joint, cfg), max_order);
}

std::vector<FockVector> test_states() {
    std::vector<FockVector> states;
    states.push_back(coherent_state(2.0, coherent_cutoff(2.0, 1e-12), 1e-12));
    states.push_back(squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-12), 1e-12));
    states.push_back(superposition_0n(3, 3));
    states.push_back(vacuum_state());
    return states;
}

}  // namespace

TEST_CASE("three moment routes agree to 1e-10") {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const double eps = 1e-12;
    for (const FockVector& sig : test_states()) {
        for (double phi : {0.0, 0.7, 1.5707963267948966, 2.9}) {
            const LocalOscillator lo(2.0, phi);
            const MomentSet a = counts_route(sig, lo, cfg, 4, eps);
            const MomentSet b = x_moments_analytic(sig, lo, cfg, 4, eps);
            const MomentSet c = x_moments_closed(sig, lo, cfg, 4);
            for (int m = 0; m <= 4; ++m) {
                CHECK(std::abs(a.m[m] - b.m[m]) < 1e-10);
                CHECK(std::abs(b.m[m] - c.m[m]) < 1e-10);
            }
        }
    }
}

TEST_CASE("moment magnitudes respect the N^m bound on exact routes") {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-12), 1e-12);
    for (double phi : {0.0, 1.1, 2.2}) {
        const MomentSet ms = x_moments_closed(sig, LocalOscillator(2.0, phi), cfg, 4);
        for (int m = 0; m <= 4; ++m) {
            CHECK(std::abs(ms.m[m]) <= std::pow(4.0, m) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("coherent first moment matches the closed form") {
    const cdouble alpha(2.0, 0.0);
    const FockVector sig =
        coherent_state(alpha, coherent_cutoff(std::abs(alpha), 1e-13), 1e-13);
    for (double eta : {0.5, 1.0}) {
        for (double nu : {0.0, 0.25}) {
            const DetectorConfig cfg(4, eta, nu);
            for (double phi : {0.0, 0.4, 1.2, 3.0}) {
                const LocalOscillator lo(2.0, phi);
                const double direct = x_moments_closed(sig, lo, cfg, 1).m[1];
                const double closed = closed_form_coherent_x(alpha, lo, cfg);
                CHECK(direct == doctest::Approx(closed).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("closed form approaches the linear limit at rate 1/N") {
    const cdouble alpha(2.0, 0.0);
    const FockVector sig =
        coherent_state(alpha, coherent_cutoff(std::abs(alpha), 1e-12), 1e-12);
    const LocalOscillator lo(2.0, 0.0);
    std::vector<double> dev;
    for (int n : {100, 1000, 10000}) {
        const DetectorConfig cfg(n, 0.5, 0.25);
        dev.push_back(std::abs(closed_form_coherent_x(alpha, lo, cfg) -
                               linear_limit_x(sig, lo, cfg)));
    }
    CHECK(dev[0] / dev[1] > 5.0);
    CHECK(dev[0] / dev[1] < 20.0);
    CHECK(dev[1] / dev[2] > 5.0);
    CHECK(dev[1] / dev[2] < 20.0);
}

TEST_CASE("vacuum moments vanish") {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const MomentSet ms = x_moments_closed(vacuum_state(), LocalOscillator(2.0, 0.9), cfg, 4);
    CHECK(ms.m[0] == 1.0);
    for (int m = 1; m <= 4; ++m) CHECK(std::abs(ms.m[m]) < 1e-12);
}

TEST_CASE("superposition |0:n> has period 2pi/n in the first moment") {
    const DetectorConfig cfg(4, 0.5, 0.25);
    for (int n : {1, 3, 5}) {
        const FockVector sig = superposition_0n(n, n);
        const double shift = 2.0 * kPi / n;
        for (double phi : {0.1, 0.9, 2.0}) {
            const double x0 =
                x_moments_closed(sig, LocalOscillator(2.0, phi), cfg, 1).m[1];
            const double x1 =
                x_moments_closed(sig, LocalOscillator(2.0, phi + shift), cfg, 1).m[1];
            CHECK(std::abs(x0 - x1) < 1e-10);
        }
    }
}

TEST_CASE("pi moments from counts are factorial-ratio contractions") {
    // For a deterministic click pattern (all diodes firing), pi(j1,j2) = 1.
    JointClickDistribution clicks;
    clicks.n = 3;
    clicks.phase = 0.0;
    clicks.c.assign(16, 0.0);
    clicks.c[15] = 1.0;  // k1 = k2 = 3
    CHECK(pi_moment_from_counts(clicks, 0, 0) == doctest::Approx(1.0));
    CHECK(pi_moment_from_counts(clicks, 2, 1) == doctest::Approx(1.0));
    CHECK(pi_moment_from_counts(clicks, 3, 3) == doctest::Approx(1.0));

    // k1 = 1 of 3 diodes: pi(1,0) = 1/3, pi(2,0) = 0 (only one lit diode)
    clicks.c.assign(16, 0.0);
    clicks.c[1 * 4 + 0] = 1.0;
    CHECK(pi_moment_from_counts(clicks, 1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(pi_moment_from_counts(clicks, 2, 0) == 0.0);
}

TEST_CASE("order caps and zeroth-moment validation") {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const FockVector sig = coherent_state(1.0, coherent_cutoff(1.0, 1e-10), 1e-10);
    CHECK_THROWS_AS(x_moments_closed(sig, LocalOscillator(2.0, 0.0), cfg, 5),
                    ArgumentError);
    CHECK_THROWS_AS(x_moments_closed(sig, LocalOscillator(2.0, 0.0), cfg, -1),
                    ArgumentError);
    CHECK_THROWS_AS(MomentSet(0.0, {}), ArgumentError);
    CHECK_THROWS_AS(MomentSet(0.0, {0.5, 0.1}), NumericalError);
    const MomentSet ok(0.3, {1.0 + 5e-12, 0.25});
    CHECK(ok.m[0] == 1.0);
    CHECK(ok.max_order() == 1);
}

TEST_CASE("moments at an explicit LO amplitude match the polar route") {
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-12), 1e-12);
    const DetectorConfig cfg(4, 0.5, 0.25);
    const double r = 2.0, phi = 0.8;
    const MomentSet a = x_moments_closed(sig, LocalOscillator(r, phi), cfg, 4);
    const MomentSet b =
        x_moments_at_lo_amplitude(sig, std::polar(r, phi), cfg, 4, phi);
    for (int m = 0; m <= 4; ++m) CHECK(a.m[m] == doctest::Approx(b.m[m]).epsilon(1e-13));
}
