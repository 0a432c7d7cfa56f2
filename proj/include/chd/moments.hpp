#pragma once

#include <vector>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"

namespace chd {

/// Normally ordered moments <:X^m:> of the click-difference quadrature
/// X = N(pi_1 - pi_2) at one LO phase. m[0] is pinned to exactly 1 after
/// validation. Exact routes also satisfy |m[k]| <= N^k; empirical estimates
/// may exceed that bound by sampling noise, so it is not a type invariant.
struct MomentSet {
    double phase;
    std::vector<double> m;

    MomentSet(double phase_, std::vector<double> moments);
    int max_order() const { return static_cast<int>(m.size()) - 1; }
};

/// <:pi_1^{j1} pi_2^{j2}:> from click frequencies via the factorial-ratio
/// estimator; every weight is a product prod_i (k-i)/(N-i) in [0, 1].
double pi_moment_from_counts(const JointClickDistribution& clicks, int j1, int j2);

/// <:X^m:> from click frequencies, m <= N.
double x_moment_from_counts(const JointClickDistribution& clicks, int m);

MomentSet moments_from_counts(const JointClickDistribution& clicks, int max_order);

/// Moments through the two-mode photon distribution: binomial expansion of
/// the arm nonlinearities into joint geometric expectations. Shares only the
/// state constructors with the counts route. max_order <= N.
MomentSet x_moments_analytic(const FockVector& signal, const LocalOscillator& lo,
                             const DetectorConfig& cfg, int max_order,
                             double eps = kDefaultTruncationEps);

/// Same moments evaluated directly from the signal amplitudes: for each pair
/// (t1, t2) the two-arm expectation reduces to
///   E = e^{(tau-1)|beta|^2} sum_w tau^w |U_w|^2,   tau = (t1+t2)/2,
///   U_w = sum_d c_{w+d} z^d sqrt(C(w+d,w)/d!),     z  = (t1-t2)/2 conj(beta),
/// a manifestly nonnegative series that needs no two-mode expansion. O(D^2)
/// per pair, so it handles cutoffs in the thousands and is what the LO-noise
/// quadrature evaluates per node. Cross-checked against x_moments_analytic.
MomentSet x_moments_closed(const FockVector& signal, const LocalOscillator& lo,
                           const DetectorConfig& cfg, int max_order);

/// Closed route for an arbitrary complex LO amplitude (quadrature nodes).
MomentSet x_moments_at_lo_amplitude(const FockVector& signal, cdouble beta,
                                    const DetectorConfig& cfg, int max_order,
                                    double phase_tag);

/// First moment for a coherent signal in closed form:
/// 2N e^{-eta(r^2+|alpha|^2)/(2N) - nu} sinh(eta r x(phi) / (2N)),
/// x(phi) = 2 Re(alpha e^{-i phi}).
double closed_form_coherent_x(cdouble alpha, const LocalOscillator& lo,
                              const DetectorConfig& cfg);

/// Large-N linearized value e^{-nu} eta r <x(phi)> from the signal amplitudes.
double linear_limit_x(const FockVector& signal, const LocalOscillator& lo,
                      const DetectorConfig& cfg);

}  // namespace chd
