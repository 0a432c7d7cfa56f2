#pragma once

#include <cstdint>
#include <vector>

#include "chd/click.hpp"
#include "chd/moments.hpp"
#include "chd/witness.hpp"

namespace chd {

/// Empirical click frequencies from `shots` multinomial draws. Reproducible
/// for a given (seed, stream) on any thread count.
JointClickDistribution sample_clicks(const JointClickDistribution& exact,
                                     std::uint64_t shots, std::uint64_t seed,
                                     std::uint64_t stream = 0);

struct MonteCarloWitness {
    double value;                    // determinant from the sampled frequencies
    double se;                       // bootstrap standard error
    std::vector<double> replicates;
    bool nonclassical;               // value < -3 se
};

/// Witness determinant for the index set `orders`, estimated from a finite
/// sample of `exact` plus a nonparametric bootstrap (replicates resample the
/// empirical distribution on streams 1..n_bootstrap).
MonteCarloWitness monte_carlo_witness(const JointClickDistribution& exact,
                                      const std::vector<int>& orders,
                                      std::uint64_t shots, std::uint64_t seed,
                                      int n_bootstrap = 200);

}  // namespace chd
