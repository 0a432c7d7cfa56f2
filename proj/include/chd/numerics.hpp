#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "chd/errors.hpp"

namespace chd {

constexpr double kDefaultTruncationEps = 1e-10;
constexpr double kPi = 3.14159265358979323846;

/// ln(n!) for n = 0..nmax, precomputed. Factorials above ~170 overflow
/// double, so all factorial ratios in the library go through logs.
inline std::vector<double> log_factorial_table(int nmax) {
    std::vector<double> lf(static_cast<size_t>(nmax) + 1, 0.0);
    for (int n = 2; n <= nmax; ++n)
        lf[static_cast<size_t>(n)] =
            lf[static_cast<size_t>(n - 1)] + std::log(static_cast<double>(n));
    return lf;
}

/// ln C(n, k) from a log-factorial table.
inline double log_choose(const std::vector<double>& lf, int n, int k) {
    return lf[static_cast<size_t>(n)] - lf[static_cast<size_t>(k)] -
           lf[static_cast<size_t>(n - k)];
}

/// C(n, k) in double precision; exact for the small n used here.
inline double choose(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return std::round(c);
}

/// Compensated (Neumaier) accumulator for sums with mixed magnitudes.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Smallest s with P(Poisson(lambda) > s) <= tail.
inline int poisson_tail_cutoff(double lambda, double tail) {
    if (lambda < 0.0) throw ArgumentError("poisson_tail_cutoff: lambda < 0");
    if (lambda == 0.0) return 0;
    // Work with log pmf; accumulate the tail from above once past the mean.
    int s = static_cast<int>(lambda);
    double lp = -lambda + s * std::log(lambda) - std::lgamma(s + 1.0);
    // Walk right until the pmf alone is far below the budget, then add a
    // geometric bound for the remainder: p(s+1) + p(s+2) + ... <= p(s+1)/(1-r)
    // with r = lambda/(s+2) < 1.
    for (;;) {
        ++s;
        lp += std::log(lambda) - std::log(static_cast<double>(s));
        double r = lambda / (s + 2);
        if (r < 0.9) {
            double bound = std::exp(lp) / (1.0 - r);
            if (bound <= tail) return s;
        }
    }
}

/// count points from start to stop inclusive; count == 1 gives {start}.
inline std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw ArgumentError("linspace: count must be >= 1");
    std::vector<double> x(static_cast<size_t>(count));
    if (count == 1) {
        x[0] = start;
        return x;
    }
    double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) x[static_cast<size_t>(i)] = start + i * step;
    return x;
}

}  // namespace chd
