#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chd/click.hpp"
#include "chd/errors.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/monte_carlo.hpp"
#include "chd/philox.hpp"
#include "chd/witness.hpp"

using namespace chd;

TEST_CASE("Philox4x32-10 reproduces the published vectors") {
    {
        const Philox4x32 rng(0, 0);
        const auto out = rng.block(0);
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        const Philox4x32 rng(~0ull, ~0ull);
        const auto out = rng.block(~0ull);
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        // counter and key loaded with the hex digits of pi
        const std::uint64_t ctr_lo = 0x85a308d3243f6a88ull;
        const std::uint64_t stream = 0x0370734413198a2eull;
        const std::uint64_t seed = 0x299f31d0a4093822ull;
        const Philox4x32 rng(seed, stream);
        const auto out = rng.block(ctr_lo);
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("uniforms are deterministic, stream-separated, and in [0,1)") {
    const Philox4x32 a(42, 0);
    const Philox4x32 b(42, 0);
    const Philox4x32 c(42, 1);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = a.uniform(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.uniform(i));
    }
    int differs = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        if (a.uniform(i) != c.uniform(i)) ++differs;
    }
    CHECK(differs == 100);
}

namespace {

JointClickDistribution squeezed_exact() {
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-12), 1e-12);
    const DetectorConfig cfg(4, 0.5, 0.25);
    const TwoModeState two = mix_on_beamsplitter(sig, LocalOscillator(2.0, 0.0), 1e-12);
    return joint_click_distribution(JointPhotonDistribution(two), cfg);
}

}  // namespace

TEST_CASE("sampling is reproducible and close to the law") {
    const JointClickDistribution exact = squeezed_exact();
    const JointClickDistribution s1 = sample_clicks(exact, 200000, 7, 0);
    const JointClickDistribution s2 = sample_clicks(exact, 200000, 7, 0);
    REQUIRE(s1.c.size() == exact.c.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < s1.c.size(); ++i) {
        CHECK(s1.c[i] == s2.c[i]);
        sum += s1.c[i];
        // 6-sigma band for a binomial cell
        const double p = exact.c[i];
        const double sigma = std::sqrt(p * (1.0 - p) / 200000.0);
        CHECK(std::abs(s1.c[i] - p) <= 6.0 * sigma + 1e-9);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // a different seed gives a different draw
    const JointClickDistribution s3 = sample_clicks(exact, 200000, 8, 0);
    bool any_diff = false;
    for (std::size_t i = 0; i < s1.c.size(); ++i) {
        if (s1.c[i] != s3.c[i]) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("bootstrap witness recovers the exact value within its error bar") {
    const JointClickDistribution exact = squeezed_exact();
    const double truth =
        hankel_determinant(moments_from_counts(exact, 2), {0, 1});
    CHECK(truth < 0.0);  // squeezed direction

    const MonteCarloWitness mc = monte_carlo_witness(exact, {0, 1}, 200000, 11, 60);
    CHECK(mc.se > 0.0);
    CHECK(static_cast<int>(mc.replicates.size()) == 60);
    CHECK(std::abs(mc.value - truth) <= 5.0 * mc.se);
    CHECK(mc.nonclassical);
}

TEST_CASE("argument validation") {
    const JointClickDistribution exact = squeezed_exact();
    CHECK_THROWS_AS(sample_clicks(exact, 0, 1, 0), ArgumentError);
    CHECK_THROWS_AS(monte_carlo_witness(exact, {}, 100, 1, 10), ArgumentError);
    CHECK_THROWS_AS(monte_carlo_witness(exact, {0, 1}, 100, 1, 1), ArgumentError);
}
