#pragma once

#include <vector>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/moments.hpp"

namespace chd {

/// Gaussian LO fluctuations in the frame rotated by the mean phase:
/// beta = (r + dx + i dp) e^{i phi},  dx ~ N(0, sigma_x^2), dp ~ N(0, sigma_p^2).
/// sigma_x jitters the LO amplitude, sigma_p mostly its phase (arctan(dp/r)).
struct NoiseModel {
    double sigma_x = 0.0;
    double sigma_p = 0.0;

    NoiseModel(double sx, double sp);
};

/// Nodes and weights for integrals against e^{-u^2} du. Weights sum to
/// sqrt(pi). Nodes ascend; n >= 1.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Moments of the click difference averaged over the LO distribution.
/// Tensor Gauss-Hermite quadrature, refined by roughly doubling the node
/// count until every moment moves less than rel_tol; throws QuadratureError
/// if four refinements are not enough. Each node is evaluated through
/// x_moments_at_lo_amplitude.
MomentSet noise_averaged_moments(const FockVector& signal, const LocalOscillator& lo,
                                 const NoiseModel& noise, const DetectorConfig& cfg,
                                 int max_order, int initial_nodes = 21,
                                 double rel_tol = 1e-8);

}  // namespace chd
