#include "chd/lo_noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chd/errors.hpp"
#include "chd/numerics.hpp"

namespace chd {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Orthonormal Hermite values h~_0..h~_n at x plus the Christoffel sum
// sum_{k<n} h~_k^2, which gives the Gauss weight as its reciprocal.
struct HermiteEval {
    double hn;      // h~_n(x)
    double hn1;     // h~_{n-1}(x)
    double christoffel;
};

HermiteEval hermite_ortho(int n, double x) {
    double hkm1 = 0.0;
    double hk = 0.75112554446494248;  // pi^{-1/4}
    double sum = hk * hk;
    for (int k = 0; k < n; ++k) {
        const double hkp1 = x * std::sqrt(2.0 / (k + 1)) * hk -
                            std::sqrt(static_cast<double>(k) / (k + 1)) * hkm1;
        hkm1 = hk;
        hk = hkp1;
        if (k + 1 < n) sum += hk * hk;
    }
    return {hk, hkm1, sum};
}

}  // namespace

NoiseModel::NoiseModel(double sx, double sp) : sigma_x(sx), sigma_p(sp) {
    if (!(sx >= 0.0) || !(sp >= 0.0)) {
        throw ArgumentError("noise widths must be nonnegative");
    }
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw ArgumentError("Gauss-Hermite rule needs n >= 1");
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int upper = (n + 1) / 2;
    std::vector<double> roots(upper);
    for (int i = 0; i < upper; ++i) {
        double x;
        if (i == 0) {
            x = std::sqrt(2.0 * n + 1.0) -
                1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            x = roots[0] - 1.14 * std::pow(static_cast<double>(n), 0.426) / roots[0];
        } else if (i == 2) {
            x = 1.86 * roots[1] - 0.86 * roots[0];
        } else if (i == 3) {
            x = 1.91 * roots[2] - 0.91 * roots[1];
        } else {
            x = 2.0 * roots[i - 1] - roots[i - 2];
        }
        bool converged = false;
        for (int it = 0; it < 64; ++it) {
            const HermiteEval e = hermite_ortho(n, x);
            const double deriv = std::sqrt(2.0 * n) * e.hn1;
            const double dx = e.hn / deriv;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw QuadratureError("Hermite root refinement stalled at n = " +
                                  std::to_string(n));
        }
        roots[i] = x;
    }

    // roots[] descends from the largest; mirror into an ascending table.
    for (int i = 0; i < upper; ++i) {
        const double x = roots[i];
        const HermiteEval e = hermite_ortho(n, x);
        const double w = 1.0 / e.christoffel;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

    CompensatedSum total;
    for (double w : rule.weights) total.add(w);
    if (std::abs(total.value() - kSqrtPi) > 1e-12 * kSqrtPi) {
        throw QuadratureError("Gauss-Hermite weights failed the sqrt(pi) check");
    }
    return rule;
}

namespace {

std::vector<double> averaged_once(const FockVector& signal, const LocalOscillator& lo,
                                  const NoiseModel& noise, const DetectorConfig& cfg,
                                  int max_order, int n_nodes) {
    // A zero-width axis collapses to the single node dx = 0 with full mass.
    const GaussHermiteRule trivial{{0.0}, {kSqrtPi}};
    const GaussHermiteRule gx = noise.sigma_x > 0.0 ? gauss_hermite(n_nodes) : trivial;
    const GaussHermiteRule gp = noise.sigma_p > 0.0 ? gauss_hermite(n_nodes) : trivial;

    const cdouble rot = std::polar(1.0, lo.phi);
    std::vector<CompensatedSum> acc(max_order + 1);
    for (std::size_t i = 0; i < gx.nodes.size(); ++i) {
        for (std::size_t j = 0; j < gp.nodes.size(); ++j) {
            const double weight = gx.weights[i] * gp.weights[j] / (kSqrtPi * kSqrtPi);
            if (weight < 1e-25) continue;
            const double dx = std::sqrt(2.0) * noise.sigma_x * gx.nodes[i];
            const double dp = std::sqrt(2.0) * noise.sigma_p * gp.nodes[j];
            const cdouble beta = (cdouble(lo.r + dx, dp)) * rot;
            const MomentSet ms =
                x_moments_at_lo_amplitude(signal, beta, cfg, max_order, lo.phi);
            for (int k = 0; k <= max_order; ++k) acc[k].add(weight * ms.m[k]);
        }
    }
    std::vector<double> out(max_order + 1);
    for (int k = 0; k <= max_order; ++k) out[k] = acc[k].value();
    return out;
}

}  // namespace

MomentSet noise_averaged_moments(const FockVector& signal, const LocalOscillator& lo,
                                 const NoiseModel& noise, const DetectorConfig& cfg,
                                 int max_order, int initial_nodes, double rel_tol) {
    if (initial_nodes < 1) throw ArgumentError("initial_nodes must be >= 1");
    if (noise.sigma_x == 0.0 && noise.sigma_p == 0.0) {
        return x_moments_closed(signal, lo, cfg, max_order);
    }

    int n = initial_nodes;
    std::vector<double> prev =
        averaged_once(signal, lo, noise, cfg, max_order, n);
    for (int refinement = 0; refinement < 4; ++refinement) {
        const int n_next = 2 * n + 1;
        std::vector<double> next =
            averaged_once(signal, lo, noise, cfg, max_order, n_next);
        double worst = 0.0;
        for (int k = 0; k <= max_order; ++k) {
            const double scale = std::max(1.0, std::abs(next[k]));
            worst = std::max(worst, std::abs(next[k] - prev[k]) / scale);
        }
        if (worst <= rel_tol) {
            return MomentSet(lo.phi, std::move(next));
        }
        prev = std::move(next);
        n = n_next;
    }
    throw QuadratureError("noise average did not settle after node doubling; "
                          "widths may be too large for the requested tolerance");
}

}  // namespace chd
