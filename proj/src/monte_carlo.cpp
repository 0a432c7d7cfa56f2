#include "chd/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "chd/errors.hpp"
#include "chd/numerics.hpp"
#include "chd/parallel.hpp"
#include "chd/philox.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chd {

namespace {

constexpr std::uint64_t kChunk = 65536;

std::vector<std::uint64_t> sample_histogram(const std::vector<double>& cdf,
                                            std::uint64_t shots,
                                            std::uint64_t seed,
                                            std::uint64_t stream) {
    const std::size_t cells = cdf.size();
    const Philox4x32 rng(seed, stream);
    const std::uint64_t n_chunks = (shots + kChunk - 1) / kChunk;

    std::vector<std::uint64_t> hist(cells, 0);
#pragma omp parallel num_threads(thread_count())
    {
        std::vector<std::uint64_t> local(cells, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(n_chunks);
             ++chunk) {
            const std::uint64_t lo = static_cast<std::uint64_t>(chunk) * kChunk;
            const std::uint64_t hi = std::min(shots, lo + kChunk);
            for (std::uint64_t i = lo; i < hi; ++i) {
                const double u = rng.uniform(i);
                const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                std::size_t cell = static_cast<std::size_t>(it - cdf.begin());
                if (cell >= cells) cell = cells - 1;
                ++local[cell];
            }
        }
#pragma omp critical
        for (std::size_t c = 0; c < cells; ++c) hist[c] += local[c];
    }
    return hist;
}

std::vector<double> cumulative(const std::vector<double>& p) {
    std::vector<double> cdf(p.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc.add(p[i]);
        cdf[i] = acc.value();
    }
    cdf.back() = 1.0;  // guard the top edge against rounding
    return cdf;
}

JointClickDistribution frequencies_from_histogram(
    const std::vector<std::uint64_t>& hist, std::uint64_t shots, int n,
    double phase) {
    std::vector<double> freq(hist.size());
    for (std::size_t i = 0; i < hist.size(); ++i) {
        freq[i] = static_cast<double>(hist[i]) / static_cast<double>(shots);
    }
    return JointClickDistribution{std::move(freq), n, phase};
}

}  // namespace

JointClickDistribution sample_clicks(const JointClickDistribution& exact,
                                     std::uint64_t shots, std::uint64_t seed,
                                     std::uint64_t stream) {
    if (shots == 0) throw ArgumentError("sampling needs at least one shot");
    const auto cdf = cumulative(exact.c);
    const auto hist = sample_histogram(cdf, shots, seed, stream);
    return frequencies_from_histogram(hist, shots, exact.n, exact.phase);
}

MonteCarloWitness monte_carlo_witness(const JointClickDistribution& exact,
                                      const std::vector<int>& orders,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int n_bootstrap) {
    if (orders.empty()) throw ArgumentError("witness needs a nonempty order set");
    if (n_bootstrap < 2) throw ArgumentError("bootstrap needs at least 2 replicates");
    const int max_order = 2 * *std::max_element(orders.begin(), orders.end());

    const JointClickDistribution sampled = sample_clicks(exact, shots, seed, 0);
    const double value =
        hankel_determinant(moments_from_counts(sampled, max_order), orders);

    const auto cdf = cumulative(sampled.c);
    std::vector<double> reps(n_bootstrap);
    for (int b = 0; b < n_bootstrap; ++b) {
        const auto hist = sample_histogram(cdf, shots, seed, 1 + b);
        const JointClickDistribution resampled =
            frequencies_from_histogram(hist, shots, exact.n, exact.phase);
        reps[b] = hankel_determinant(moments_from_counts(resampled, max_order),
                                     orders);
    }

    CompensatedSum mean_acc;
    for (double r : reps) mean_acc.add(r);
    const double mean = mean_acc.value() / n_bootstrap;
    CompensatedSum var_acc;
    for (double r : reps) var_acc.add((r - mean) * (r - mean));
    const double se = std::sqrt(var_acc.value() / (n_bootstrap - 1));

    return {value, se, std::move(reps), value < -3.0 * se};
}

}  // namespace chd
