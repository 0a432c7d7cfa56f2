// Acceptance suite: one PASS/FAIL line per criterion, exit code = number of
// failures. Tolerances are pinned here and nowhere else; the unit tests
// cover the same machinery at finer grain.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/lo_noise.hpp"
#include "chd/moments.hpp"
#include "chd/monte_carlo.hpp"
#include "chd/numerics.hpp"
#include "chd/witness.hpp"

using namespace chd;

namespace {

struct Result {
    bool ok;
    std::string detail;
};

Result pass(const std::string& detail) { return {true, detail}; }
Result fail(const std::string& detail) { return {false, detail}; }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

MomentSet counts_route(const FockVector& sig, const LocalOscillator& lo,
                       const DetectorConfig& cfg, int max_order, double eps) {
    const TwoModeState two = mix_on_beamsplitter(sig, lo, eps);
    const JointPhotonDistribution joint(two);
    return moments_from_counts(joint_click_distribution(joint, cfg), max_order);
}

// ---- 1 -----------------------------------------------------------------

Result criterion_route_equivalence() {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const double eps = 1e-12;
    std::vector<FockVector> states;
    states.push_back(coherent_state(2.0, coherent_cutoff(2.0, eps), eps));
    states.push_back(squeezed_vacuum(0.5, squeezed_cutoff(0.5, eps), eps));
    states.push_back(superposition_0n(3, 3, eps));
    states.push_back(vacuum_state(0, eps));

    double worst = 0.0;
    for (const FockVector& sig : states) {
        for (double phi : linspace(0.0, 2.0 * kPi, 9)) {
            const LocalOscillator lo(2.0, phi);
            const MomentSet a = counts_route(sig, lo, cfg, 4, eps);
            const MomentSet b = x_moments_analytic(sig, lo, cfg, 4, eps);
            const MomentSet c = x_moments_closed(sig, lo, cfg, 4);
            for (int m = 0; m <= 4; ++m) {
                worst = std::max(worst, std::abs(a.m[m] - b.m[m]));
                worst = std::max(worst, std::abs(b.m[m] - c.m[m]));
            }
        }
    }
    if (worst > 1e-10) return fail(fmt("worst route gap %.3e exceeds 1e-10", worst));
    return pass(fmt("worst route gap %.3e", worst));
}

// ---- 2 -----------------------------------------------------------------

Result criterion_vacuum_nullity() {
    const DetectorConfig cfg(4, 0.5, 0.25);
    double worst = 0.0;
    for (double phi : {0.0, 1.1}) {
        const MomentSet ms =
            x_moments_closed(vacuum_state(), LocalOscillator(2.0, phi), cfg, 4);
        for (int m = 1; m <= 4; ++m) worst = std::max(worst, std::abs(ms.m[m]));
        for (const auto& r : witness_scan(ms)) {
            worst = std::max(worst, std::abs(r.determinant));
            if (r.nonclassical) return fail("vacuum flagged nonclassical");
        }
    }
    if (worst > 1e-12) {
        return fail(fmt("vacuum moment/determinant %.3e exceeds 1e-12", worst));
    }
    return pass(fmt("all moments and determinants below %.3e", worst));
}

// ---- 3 -----------------------------------------------------------------

Result criterion_linear_limit() {
    const cdouble alpha(2.0, 0.0);
    const FockVector sig = coherent_state(alpha, coherent_cutoff(2.0, 1e-12), 1e-12);
    const LocalOscillator lo(2.0, 0.0);
    std::vector<double> dev;
    for (int n : {100, 1000, 10000}) {
        const DetectorConfig cfg(n, 0.5, 0.25);
        dev.push_back(std::abs(closed_form_coherent_x(alpha, lo, cfg) -
                               linear_limit_x(sig, lo, cfg)));
    }
    const double r01 = dev[0] / dev[1];
    const double r12 = dev[1] / dev[2];
    if (r01 < 5.0 || r01 > 20.0 || r12 < 5.0 || r12 > 20.0) {
        return fail(
            fmt("deviation ratios per decade %.2f, %.2f leave [5, 20]", r01, r12));
    }
    return pass(fmt("deviation shrinks by %.2f and %.2f per decade of N", r01, r12));
}

// ---- 4 and 5 -----------------------------------------------------------

std::string squeezed_variance_scan(double eta, double& min_var, double& var_mid,
                                   double& var_end) {
    const DetectorConfig cfg(4, eta, 0.25);
    const LocalOscillator lo(2.0, 0.0);
    min_var = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double xi = 0.1 * i;
        const FockVector sig = squeezed_vacuum(xi, squeezed_cutoff(xi, 1e-10), 1e-10);
        const double v =
            normally_ordered_variance(x_moments_closed(sig, lo, cfg, 2));
        if (v >= 0.0) return fmt("variance %.3e not negative at xi = %.1f", v, xi);
        min_var = std::min(min_var, v);
        if (i == 15) var_mid = v;
        if (i == 30) var_end = v;
    }
    return "";
}

Result criterion_squeezed_negativity() {
    double min_var = 0.0, var_mid = 0.0, var_end = 0.0;
    const std::string err = squeezed_variance_scan(0.5, min_var, var_mid, var_end);
    if (!err.empty()) return fail(err);
    if (!(min_var >= -1.0 && min_var < 0.0)) {
        return fail(fmt("minimum variance %.4f leaves [-1, 0)", min_var));
    }
    if (!(var_end > var_mid)) {
        return fail(fmt("variance at xi=3 (%.4f) not closer to zero than xi=1.5 (%.4f)",
                        var_end, var_mid));
    }
    return pass(fmt("negative across the grid, min %.4f, recovery %.4f -> %.4f",
                    min_var, var_mid, var_end));
}

Result criterion_low_efficiency() {
    double min_var = 0.0, var_mid = 0.0, var_end = 0.0;
    const std::string err = squeezed_variance_scan(0.01, min_var, var_mid, var_end);
    if (!err.empty()) return fail(err);
    if (!(min_var >= -9e-4 && min_var <= -5e-4)) {
        // small-eta moments linearize to e^{-nu} eta r x(phi), bounding the
        // variance by -(e^{-nu} eta r)^2 = -2.43e-4 for any N at these
        // parameters; report the measured depth rather than widen the window
        return fail(fmt("negative at every xi, but the minimum %.3e leaves "
                        "[-9e-4, -5e-4]; the small-eta floor -(e^-nu eta r)^2 = "
                        "%.2e rules that window out",
                        min_var, -std::pow(std::exp(-0.25) * 0.01 * 2.0, 2)));
    }
    return pass(fmt("eta = 1%% still certifies squeezing, min variance %.3e", min_var));
}

// ---- 6 -----------------------------------------------------------------

Result criterion_superposition_amplitudes() {
    const DetectorConfig cfg(4, 0.5, 0.25);
    const double targets[3] = {-0.217, -2.412, -4.869};
    const int levels[3] = {1, 3, 5};
    std::string detail;
    for (int i = 0; i < 3; ++i) {
        const int n = levels[i];
        const FockVector sig = superposition_0n(n, n);
        double amp = 0.0;
        for (double phi : linspace(0.0, 2.0 * kPi, 361)) {
            amp = std::max(amp, std::abs(x_moments_closed(
                                             sig, LocalOscillator(2.0, phi), cfg, 1)
                                             .m[1]));
        }
        const double lg = std::log10(amp);
        if (std::abs(lg - targets[i]) > 0.05) {
            return fail(fmt("log10 amplitude %.3f at n = %.0f misses %.3f by > 0.05",
                            lg, static_cast<double>(n), targets[i]));
        }
        detail += fmt("%.3f ", lg);

        const double shift = 2.0 * kPi / n;
        for (double phi : {0.13, 0.77, 1.9}) {
            const double x0 =
                x_moments_closed(sig, LocalOscillator(2.0, phi), cfg, 1).m[1];
            const double x1 =
                x_moments_closed(sig, LocalOscillator(2.0, phi + shift), cfg, 1).m[1];
            if (std::abs(x0 - x1) > 1e-10) {
                return fail(fmt("period 2pi/%.0f violated by %.3e",
                                static_cast<double>(n), std::abs(x0 - x1)));
            }
        }
    }
    return pass("log10 amplitudes " + detail + "with 2pi/n periods");
}

// ---- 7 -----------------------------------------------------------------

Result criterion_higher_order_witness() {
    const FockVector sig = superposition_0n(2, 2);
    double worst_var = 0.0;
    double weakest_det3 = -1e300;
    for (int e = 1; e <= 10; ++e) {
        const DetectorConfig cfg(4, 0.1 * e, 0.25);
        double min_det3 = 0.0;
        for (double phi : linspace(0.0, 2.0 * kPi, 73)) {
            const MomentSet ms =
                x_moments_closed(sig, LocalOscillator(2.0, phi), cfg, 4);
            worst_var = std::min(worst_var, normally_ordered_variance(ms));
            min_det3 = std::min(min_det3, hankel_determinant(ms, {0, 1, 2}));
        }
        if (!(min_det3 < -1e-12)) {
            return fail(fmt("order-3 minor only reaches %.3e at eta = %.1f", min_det3,
                            0.1 * e));
        }
        weakest_det3 = std::max(weakest_det3, min_det3);
    }
    if (worst_var < -1e-10) {
        return fail(fmt("variance of (|0>+|2>)/sqrt(2) dipped to %.3e", worst_var));
    }
    return pass(fmt("variance stays >= %.1e, order-3 minor certifies at every eta "
                    "(weakest %.2e)",
                    worst_var, weakest_det3));
}

// ---- 8 -----------------------------------------------------------------

Result criterion_coherent_classical() {
    const cdouble alpha(2.0, 0.0);
    const FockVector sig = coherent_state(alpha, coherent_cutoff(2.0, 1e-12), 1e-12);
    const DetectorConfig cfg(4, 0.5, 0.25);
    double worst = 0.0;
    for (double phi : linspace(0.0, 2.0 * kPi, 9)) {
        const MomentSet clean =
            x_moments_closed(sig, LocalOscillator(2.0, phi), cfg, 4);
        const MomentSet noisy = noise_averaged_moments(
            sig, LocalOscillator(2.0, phi), NoiseModel(2.0, 1.2), cfg, 4);
        for (const MomentSet* ms : {&clean, &noisy}) {
            for (const auto& r : witness_scan(*ms)) {
                worst = std::min(worst, r.determinant);
            }
        }
    }
    if (worst < -1e-10) {
        return fail(fmt("a coherent-state determinant reached %.3e", worst));
    }
    return pass(fmt("all determinants >= %.1e with and without LO noise", worst));
}

// ---- 9 -----------------------------------------------------------------

struct Curve {
    std::vector<double> var;
    double min_var = 0.0;
    int first_nonneg = -1;  // left sign change
    int last_nonneg = -1;   // right sign change
};

Curve fig5_curve(const FockVector& sig, const NoiseModel& noise,
                 const std::vector<double>& phases) {
    const DetectorConfig cfg(4, 0.5, 0.25);
    Curve c;
    for (double phi : phases) {
        const double v = normally_ordered_variance(noise_averaged_moments(
            sig, LocalOscillator(2.0, phi), noise, cfg, 2));
        c.var.push_back(v);
        c.min_var = std::min(c.min_var, v);
    }
    for (int i = 0; i < static_cast<int>(c.var.size()); ++i) {
        if (c.var[i] >= 0.0) {
            if (c.first_nonneg < 0) c.first_nonneg = i;
            c.last_nonneg = i;
        }
    }
    return c;
}

Result criterion_lo_noise_structure() {
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-12), 1e-12);
    const auto phases = linspace(0.0, kPi, 181);
    const double step = kPi / 180.0;

    const Curve ideal = fig5_curve(sig, NoiseModel(0.0, 0.0), phases);
    const Curve ampn = fig5_curve(sig, NoiseModel(2.0, 0.0), phases);
    const Curve phn = fig5_curve(sig, NoiseModel(0.0, 1.2), phases);
    const Curve combined = fig5_curve(sig, NoiseModel(2.0, 1.2), phases);

    for (const Curve* c : {&ideal, &ampn, &phn, &combined}) {
        if (c->first_nonneg < 0 || c->var.front() >= 0.0 || c->var.back() >= 0.0) {
            return fail("expected negativity at phi = 0 and pi with a positive "
                        "middle band");
        }
    }

    // amplitude noise: shallower negativity, same crossings within 2% of pi
    if (!(ampn.min_var > ideal.min_var && ampn.min_var < 0.0)) {
        return fail(fmt("amplitude noise did not shallow the minimum (%.4f vs %.4f)",
                        ampn.min_var, ideal.min_var));
    }
    const double tol = 0.02 * kPi;
    if (std::abs(ampn.first_nonneg - ideal.first_nonneg) * step > tol ||
        std::abs(ampn.last_nonneg - ideal.last_nonneg) * step > tol) {
        return fail("amplitude noise moved a sign change by more than 2% of pi");
    }

    // phase noise: negativity intervals strictly shrink on both ends
    if (!(phn.first_nonneg < ideal.first_nonneg &&
          phn.last_nonneg > ideal.last_nonneg)) {
        return fail("phase noise did not strictly shrink the certified intervals");
    }

    // combined noise: certified set contained in the phase-noise set
    if (!(combined.first_nonneg <= phn.first_nonneg &&
          combined.last_nonneg >= phn.last_nonneg)) {
        return fail("combined noise certified outside the phase-noise intervals");
    }

    return pass(fmt("min variance %.4f (ideal) vs %.4f (amplitude); intervals "
                    "shrink under phase noise",
                    ideal.min_var, ampn.min_var));
}

// ---- 10 ----------------------------------------------------------------

Result criterion_monte_carlo() {
    const double eps = 1e-12;
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, eps), eps);
    const DetectorConfig cfg(4, 0.5, 0.25);
    const LocalOscillator lo(2.0, 0.0);
    const TwoModeState two = mix_on_beamsplitter(sig, lo, eps);
    const JointClickDistribution exact =
        joint_click_distribution(JointPhotonDistribution(two), cfg);

    const double plug_in =
        hankel_determinant(moments_from_counts(exact, 2), {0, 1});
    const double analytic =
        normally_ordered_variance(x_moments_analytic(sig, lo, cfg, 2, eps));
    if (std::abs(plug_in - analytic) > 1e-12) {
        return fail(fmt("plug-in variance %.6e vs analytic %.6e beyond 1e-12",
                        plug_in, analytic));
    }

    const MonteCarloWitness mc =
        monte_carlo_witness(exact, {0, 1}, 1000000, 20260819, 200);
    if (std::abs(mc.value - plug_in) > 5.0 * mc.se) {
        return fail(fmt("sampled value %.4e sits %.1f SE from the truth", mc.value,
                        std::abs(mc.value - plug_in) / mc.se));
    }
    if (!mc.nonclassical) {
        return fail(fmt("verdict not nonclassical: value %.3e, se %.3e", mc.value,
                        mc.se));
    }
    return pass(fmt("value within %.2f SE of truth, verdict nonclassical",
                    std::abs(mc.value - plug_in) / mc.se));
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria = {
        {"moment routes agree to 1e-10 across the state/phase grid",
         criterion_route_equivalence},
        {"vacuum yields null moments and no negativity", criterion_vacuum_nullity},
        {"coherent closed form approaches the linear limit like 1/N",
         criterion_linear_limit},
        {"squeezed variance negative over xi in [0.1, 3] with min in [-1, 0)",
         criterion_squeezed_negativity},
        {"1% efficiency still certifies squeezing at the expected depth",
         criterion_low_efficiency},
        {"|0:n> amplitudes hit the pinned log10 marks with 2pi/n periods",
         criterion_superposition_amplitudes},
        {"|0:2> variance nonnegative, order-3 minor negative at every eta",
         criterion_higher_order_witness},
        {"coherent states stay classical, with and without LO noise",
         criterion_coherent_classical},
        {"LO noise reshapes the certified intervals as expected",
         criterion_lo_noise_structure},
        {"10^6-shot Monte Carlo reproduces and certifies the witness",
         criterion_monte_carlo},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r{false, ""};
        try {
            r = criteria[i].run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        if (!r.ok) ++failures;
        std::printf("[%s] %2zu. %s: %s\n", r.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
