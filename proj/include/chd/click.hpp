#pragma once

#include <vector>

#include "chd/fock.hpp"
#include "chd/interferometer.hpp"

namespace chd {

/// Array of N on-off diodes sharing one mode equally. eta is the overall
/// detection efficiency, nu the mean dark-count exposure per diode.
struct DetectorConfig {
    int n;       ///< number of diodes (N >= 1)
    double eta;  ///< efficiency in [0, 1]
    double nu;   ///< dark-count parameter >= 0

    DetectorConfig(int n_, double eta_, double nu_);
};

/// P(k of N diodes click | n photons) for k = 0..N, n = 0..n_max, row-major
/// [k * (n_max+1) + n].
///
/// Evaluated by a positive occupancy recurrence: photons land on one of N
/// diodes uniformly and are detected with probability eta, then dark counts
/// fire independently with probability 1 - e^{-nu}. This is algebraically
/// identical to the inclusion-exclusion form (kept in chd::reference) but
/// involves only quantities in [0, 1], so it stays exact for any N where the
/// alternating sum loses digits to cancellation.
std::vector<double> povm_matrix(const DetectorConfig& cfg, int n_max);

/// Click-number statistics of one arm. Probabilities clamped at the -1e-12
/// floor and renormalized; sum validated against 1 at 1e-10 first.
struct ClickDistribution {
    std::vector<double> c;  ///< index k = 0..N
    int clicks() const { return static_cast<int>(c.size()) - 1; }
};

ClickDistribution single_click_distribution(const PhotonDistribution& dist,
                                            const DetectorConfig& cfg);

/// Joint statistics of both arms, tagged with the LO phase of the state it
/// came from so downstream moment code cannot mix phases by accident.
struct JointClickDistribution {
    std::vector<double> c;  ///< index k1 * (N+1) + k2
    int n;                  ///< diodes per arm
    double phase;

    double at(int k1, int k2) const {
        return c[static_cast<size_t>(k1) * (n + 1) + static_cast<size_t>(k2)];
    }
};

JointClickDistribution joint_click_distribution(const JointPhotonDistribution& joint,
                                                const DetectorConfig& cfg);

/// Distribution of k1 - k2; index delta + N.
struct DifferenceDistribution {
    std::vector<double> c;
    int n;
    double phase;

    double at(int delta) const { return c[static_cast<size_t>(delta + n)]; }
};

DifferenceDistribution difference_distribution(const JointClickDistribution& joint);

}  // namespace chd
