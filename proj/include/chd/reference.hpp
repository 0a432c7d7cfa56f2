#pragma once

#include <vector>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"

namespace chd::reference {

/// Serial counterparts of the production kernels, kept deliberately close to
/// the defining formulas. They trade speed and conditioning for
/// transparency; tests pin the fast paths against them on small problems and
/// the bench target times the two side by side.

/// Beamsplitter mixing through explicit Fock matrix elements,
///   amp(n1,n2) = sum_{m+p=n1+n2} c_m b_p 2^{-(m+p)/2}
///                sqrt(n1! n2! / (m! p!)) K_{n1}(m,p),
///   K_{n1}(m,p) = sum_j C(m,j) C(p,n1-j) (-1)^{p-(n1-j)}.
/// K is an exact integer for total photon numbers up to ~36; beyond that the
/// binomial products outgrow the 53-bit mantissa, so keep comparisons small.
TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 const TwoModeCutoffs& cutoffs);

/// Click POVM through the inclusion-exclusion sum
///   Pi_k(n) = C(N,k) sum_j (-1)^j C(k,j) e^{-(N-k+j)nu} (1-eta(N-k+j)/N)^n.
/// The j-sum cancels catastrophically for k near N/2 once N reaches ~32 with
/// generic eta, which is why production uses the occupancy recurrence; here
/// the sum is kept as written (compensated, log-domain terms) for
/// cross-checking at small N.
std::vector<double> povm_matrix(const DetectorConfig& cfg, int n_max);

/// Quadruple-loop contraction of the joint photon distribution with the
/// alternating-sum POVM, renormalized to unit mass.
JointClickDistribution joint_click_distribution(const JointPhotonDistribution& joint,
                                                const DetectorConfig& cfg);

}  // namespace chd::reference
