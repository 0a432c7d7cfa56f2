// Times the parallel production kernels against their serial reference
// counterparts on mid-size problems and reports the largest disagreement.
// Usage: bench_kernels [thread_cap]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/moments.hpp"
#include "chd/monte_carlo.hpp"
#include "chd/parallel.hpp"
#include "chd/reference.hpp"

using namespace chd;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void print_row(const char* kernel, const char* size, double fast_ms, double ref_ms,
               double maxdiff) {
    std::printf("%-18s %-22s %10.2f %10.2f %8.2fx   %.2e\n", kernel, size, fast_ms,
                ref_ms, ref_ms / fast_ms, maxdiff);
}

void bench_mixer() {
    const FockVector sig = coherent_state(2.0, coherent_cutoff(2.0, 1e-12), 1e-12);
    const LocalOscillator lo(2.0, 0.7);
    const TwoModeCutoffs cut{48, 48};

    const TwoModeState fast = mix_on_beamsplitter(sig, lo, cut, 1e-12);
    const TwoModeState ref = reference::mix_on_beamsplitter(sig, lo, cut);
    double maxdiff = 0.0;
    for (int n1 = 0; n1 <= cut.d1; ++n1) {
        for (int n2 = 0; n2 <= cut.d2; ++n2) {
            maxdiff = std::max(maxdiff, std::abs(fast.amplitude(n1, n2) -
                                                 ref.amplitude(n1, n2)));
        }
    }

    const double t_fast =
        time_ms([&] { (void)mix_on_beamsplitter(sig, lo, cut, 1e-12); }, 5);
    const double t_ref =
        time_ms([&] { (void)reference::mix_on_beamsplitter(sig, lo, cut); }, 3);
    print_row("mixer", "48x48 rectangle", t_fast, t_ref, maxdiff);
}

void bench_povm() {
    const DetectorConfig cfg(12, 0.6, 0.1);
    const int n_max = 5000;

    const std::vector<double> fast = povm_matrix(cfg, n_max);
    const std::vector<double> ref = reference::povm_matrix(cfg, n_max);
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
        maxdiff = std::max(maxdiff, std::abs(fast[i] - ref[i]));
    }

    const double t_fast = time_ms([&] { (void)povm_matrix(cfg, n_max); }, 5);
    const double t_ref = time_ms([&] { (void)reference::povm_matrix(cfg, n_max); }, 3);
    print_row("click POVM", "N=12, n<=5000", t_fast, t_ref, maxdiff);
}

void bench_joint_clicks() {
    const FockVector sig = squeezed_vacuum(1.5, squeezed_cutoff(1.5, 1e-10), 1e-10);
    const LocalOscillator lo(4.0, 0.3);
    const TwoModeState two = mix_on_beamsplitter(sig, lo, 1e-10);
    const JointPhotonDistribution joint(two);
    const DetectorConfig cfg(4, 0.5, 0.25);

    const JointClickDistribution fast = joint_click_distribution(joint, cfg);
    const JointClickDistribution ref = reference::joint_click_distribution(joint, cfg);
    double maxdiff = 0.0;
    for (int k1 = 0; k1 <= cfg.n; ++k1) {
        for (int k2 = 0; k2 <= cfg.n; ++k2) {
            maxdiff = std::max(maxdiff, std::abs(fast.at(k1, k2) - ref.at(k1, k2)));
        }
    }

    char size[64];
    std::snprintf(size, sizeof(size), "%dx%d photon table", joint.cutoff1() + 1,
                  joint.cutoff2() + 1);
    const double t_fast = time_ms([&] { (void)joint_click_distribution(joint, cfg); }, 5);
    const double t_ref =
        time_ms([&] { (void)reference::joint_click_distribution(joint, cfg); }, 3);
    print_row("joint clicks", size, t_fast, t_ref, maxdiff);
}

void bench_closed_moments() {
    const double xi = 2.5;
    const FockVector sig = squeezed_vacuum(xi, squeezed_cutoff(xi, 1e-10), 1e-10);
    const LocalOscillator lo(2.0, 0.4);
    const DetectorConfig cfg(4, 0.5, 0.25);

    const MomentSet fast = x_moments_closed(sig, lo, cfg, 4);
    const MomentSet ref = x_moments_analytic(sig, lo, cfg, 4, 1e-10);
    double maxdiff = 0.0;
    for (int m = 0; m <= 4; ++m) {
        maxdiff = std::max(maxdiff, std::abs(fast.m[m] - ref.m[m]));
    }

    char size[64];
    std::snprintf(size, sizeof(size), "xi=%.1f (cutoff %d)", xi, sig.cutoff());
    const double t_fast = time_ms([&] { (void)x_moments_closed(sig, lo, cfg, 4); }, 5);
    const double t_ref =
        time_ms([&] { (void)x_moments_analytic(sig, lo, cfg, 4, 1e-10); }, 2);
    print_row("closed moments", size, t_fast, t_ref, maxdiff);
}

// No serial twin exists for the sampler; the reference column is the same
// kernel capped to one thread. Results are bit-identical by construction.
void bench_sampler() {
    const FockVector sig = squeezed_vacuum(0.5, squeezed_cutoff(0.5, 1e-10), 1e-10);
    const LocalOscillator lo(2.0, 0.0);
    const DetectorConfig cfg(4, 0.5, 0.25);
    const TwoModeState two = mix_on_beamsplitter(sig, lo, 1e-10);
    const JointClickDistribution exact =
        joint_click_distribution(JointPhotonDistribution(two), cfg);
    const std::uint64_t shots = 2000000;

    const JointClickDistribution many = sample_clicks(exact, shots, 7);
    set_thread_cap(1);
    const JointClickDistribution one = sample_clicks(exact, shots, 7);
    set_thread_cap(0);
    double maxdiff = 0.0;
    for (int k1 = 0; k1 <= cfg.n; ++k1) {
        for (int k2 = 0; k2 <= cfg.n; ++k2) {
            maxdiff = std::max(maxdiff, std::abs(many.at(k1, k2) - one.at(k1, k2)));
        }
    }

    const double t_fast = time_ms([&] { (void)sample_clicks(exact, shots, 7); }, 3);
    set_thread_cap(1);
    const double t_one = time_ms([&] { (void)sample_clicks(exact, shots, 7); }, 3);
    set_thread_cap(0);
    print_row("sampler", "2e6 shots vs 1 thread", t_fast, t_one, maxdiff);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_thread_cap(std::atoi(argv[1]));
    std::printf("threads: %d\n\n", thread_count());
    std::printf("%-18s %-22s %10s %10s %9s   %s\n", "kernel", "size", "fast ms",
                "ref ms", "ratio", "max |diff|");

    bench_mixer();
    bench_povm();
    bench_joint_clicks();
    bench_closed_moments();
    bench_sampler();
    return 0;
}
