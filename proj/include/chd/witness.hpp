#pragma once

#include <vector>

#include "chd/moments.hpp"

namespace chd {

/// Determinants below -kWitnessTol count as nonclassical; the slack absorbs
/// rounding in the moment routes.
inline constexpr double kWitnessTol = 1e-10;

struct WitnessResult {
    std::vector<int> orders;
    double determinant;
    bool nonclassical;
};

/// Hankel matrix M(a,b) = m[orders[a] + orders[b]], row-major.
/// orders must be strictly ascending, start at any value >= 0, and satisfy
/// 2*orders.back() <= moments.max_order().
std::vector<double> moment_matrix(const MomentSet& moments,
                                  const std::vector<int>& orders);

/// det of moment_matrix. Cofactor expansion up to 3x3 (exact expression),
/// LU with partial pivoting beyond that.
double hankel_determinant(const MomentSet& moments, const std::vector<int>& orders);

/// <:(dX)^2:> = m2 - m1^2, the orders-{0,1} determinant.
double normally_ordered_variance(const MomentSet& moments);

/// Every index subset {0} u S, S nonempty subset of {1..max_order/2},
/// enumerated in ascending bitmask order.
std::vector<WitnessResult> witness_scan(const MomentSet& moments,
                                        double tol = kWitnessTol);

bool any_nonclassical(const std::vector<WitnessResult>& results);

}  // namespace chd
