#include "chd/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "chd/errors.hpp"
#include "chd/numerics.hpp"
#include "chd/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chd {

namespace {

// pi(j1, j2) from the table E(i1, i2) = <:t(i1)^n1 t(i2)^n2:>,
// t(i) = 1 - eta i / N. The i-sums alternate but have at most
// (max_order+1)^2 terms of magnitude <= C(j,i), far from the scale where
// cancellation could bite.
double pi_from_e_table(const std::vector<double>& e, int stride, int j1, int j2,
                       double nu) {
    CompensatedSum acc;
    for (int i1 = 0; i1 <= j1; ++i1) {
        for (int i2 = 0; i2 <= j2; ++i2) {
            const double sign = ((i1 + i2) % 2 == 0) ? 1.0 : -1.0;
            acc.add(sign * choose(j1, i1) * choose(j2, i2) *
                    std::exp(-(i1 + i2) * nu) * e[i1 * stride + i2]);
        }
    }
    return acc.value();
}

// X_m = N^m sum_j C(m,j) (-1)^{m-j} pi(j, m-j).
std::vector<double> x_from_pi(const std::vector<double>& pi, int stride,
                              int max_order, int n_detectors) {
    std::vector<double> x(max_order + 1);
    for (int m = 0; m <= max_order; ++m) {
        CompensatedSum acc;
        for (int j = 0; j <= m; ++j) {
            const double sign = ((m - j) % 2 == 0) ? 1.0 : -1.0;
            acc.add(sign * choose(m, j) * pi[j * stride + (m - j)]);
        }
        x[m] = std::pow(static_cast<double>(n_detectors), m) * acc.value();
    }
    return x;
}

std::vector<double> moments_from_e_table(const std::vector<double>& e, int max_order,
                                         const DetectorConfig& cfg) {
    if (!(e[0] > 0.0)) {
        throw NumericalError("two-arm expectation table has nonpositive mass");
    }
    const int stride = max_order + 1;
    std::vector<double> en(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) en[i] = e[i] / e[0];

    std::vector<double> pi(stride * stride);
    for (int j1 = 0; j1 <= max_order; ++j1) {
        for (int j2 = 0; j2 <= max_order; ++j2) {
            pi[j1 * stride + j2] = pi_from_e_table(en, stride, j1, j2, cfg.nu);
        }
    }
    return x_from_pi(pi, stride, max_order, cfg.n);
}

void check_order(int max_order, int n_detectors) {
    if (max_order < 0) throw ArgumentError("max_order must be nonnegative");
    if (max_order > n_detectors) {
        throw ArgumentError("moment order exceeds the diode count; X^m is only "
                            "resolvable for m <= N");
    }
}

// E(t1, t2) for arm occupations after mixing the signal with a coherent LO
// of amplitude beta. Runs over the signal amplitudes only:
//   E = e^{(tau-1)|beta|^2} sum_w tau^w |U_w|^2
// with tau = (t1+t2)/2, z = (t1-t2)/2 conj(beta) and
//   U_w = sum_d c_{w+d} F_d,  F_0 = 1,  F_{d+1} = F_d z sqrt(w+d+1)/(d+1).
// Every summand is nonnegative, so the value is exact up to rounding even
// when individual moments later cancel to 1e-5 of the term scale.
double two_arm_generating(const FockVector& signal, cdouble beta, double t1,
                          double t2) {
    const double tau = 0.5 * (t1 + t2);
    const cdouble z = 0.5 * (t1 - t2) * std::conj(beta);
    const double az = std::abs(z);
    const auto& c = signal.amplitudes();
    const int d_max = signal.cutoff();

    std::vector<double> uw2(d_max + 1);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
    for (int w = 0; w <= d_max; ++w) {
        cdouble f = 1.0;
        cdouble u = 0.0;
        for (int d = 0; w + d <= d_max; ++d) {
            u += c[w + d] * f;
            const double ratio = az * std::sqrt(static_cast<double>(w + d + 1)) /
                                 (d + 1);
            f *= z * (std::sqrt(static_cast<double>(w + d + 1)) / (d + 1));
            if (std::abs(f) < 1e-280 && ratio < 0.9) break;
        }
        uw2[w] = std::norm(u);
    }

    CompensatedSum acc;
    double tau_pow = 1.0;
    for (int w = 0; w <= d_max; ++w) {
        acc.add(tau_pow * uw2[w]);
        tau_pow *= tau;
    }
    return std::exp((tau - 1.0) * std::norm(beta)) * acc.value();
}

std::vector<double> closed_moments(const FockVector& signal, cdouble beta,
                                   const DetectorConfig& cfg, int max_order) {
    const int stride = max_order + 1;
    std::vector<double> e(stride * stride);
    for (int i1 = 0; i1 <= max_order; ++i1) {
        const double ta = std::max(0.0, 1.0 - cfg.eta * i1 / cfg.n);
        for (int i2 = 0; i2 <= max_order; ++i2) {
            const double tb = std::max(0.0, 1.0 - cfg.eta * i2 / cfg.n);
            e[i1 * stride + i2] = two_arm_generating(signal, beta, ta, tb);
        }
    }
    return moments_from_e_table(e, max_order, cfg);
}

}  // namespace

MomentSet::MomentSet(double phase_, std::vector<double> moments)
    : phase(phase_), m(std::move(moments)) {
    if (m.empty()) throw ArgumentError("MomentSet needs at least the order-0 entry");
    if (std::abs(m[0] - 1.0) > 1e-9) {
        throw NumericalError("zeroth moment deviates from 1 beyond tolerance");
    }
    m[0] = 1.0;
}

double pi_moment_from_counts(const JointClickDistribution& clicks, int j1, int j2) {
    const int n = clicks.n;
    if (j1 < 0 || j2 < 0) throw ArgumentError("pi moment orders must be nonnegative");
    if (j1 > n || j2 > n) throw ArgumentError("pi moment order exceeds diode count");

    // w_j(k) = prod_{i<j} (k-i)/(N-i), an unbiased factor in [0, 1].
    const auto weights = [n](int j) {
        std::vector<double> w(n + 1);
        for (int k = 0; k <= n; ++k) {
            double v = 1.0;
            for (int i = 0; i < j; ++i) {
                v *= static_cast<double>(k - i) / static_cast<double>(n - i);
            }
            w[k] = (k >= j) ? v : 0.0;
        }
        return w;
    };
    const auto w1 = weights(j1);
    const auto w2 = weights(j2);

    CompensatedSum acc;
    for (int k1 = j1; k1 <= n; ++k1) {
        for (int k2 = j2; k2 <= n; ++k2) {
            acc.add(w1[k1] * w2[k2] * clicks.at(k1, k2));
        }
    }
    return acc.value();
}

double x_moment_from_counts(const JointClickDistribution& clicks, int m) {
    check_order(m, clicks.n);
    CompensatedSum acc;
    for (int j = 0; j <= m; ++j) {
        const double sign = ((m - j) % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * choose(m, j) * pi_moment_from_counts(clicks, j, m - j));
    }
    return std::pow(static_cast<double>(clicks.n), m) * acc.value();
}

MomentSet moments_from_counts(const JointClickDistribution& clicks, int max_order) {
    check_order(max_order, clicks.n);
    std::vector<double> x(max_order + 1);
    for (int m = 0; m <= max_order; ++m) x[m] = x_moment_from_counts(clicks, m);
    return MomentSet(clicks.phase, std::move(x));
}

MomentSet x_moments_analytic(const FockVector& signal, const LocalOscillator& lo,
                             const DetectorConfig& cfg, int max_order, double eps) {
    check_order(max_order, cfg.n);
    const TwoModeState two = mix_on_beamsplitter(signal, lo, eps);
    const JointPhotonDistribution joint(two);

    const int stride = max_order + 1;
    std::vector<double> e(stride * stride);
    for (int i1 = 0; i1 <= max_order; ++i1) {
        const double ta = std::max(0.0, 1.0 - cfg.eta * i1 / cfg.n);
        for (int i2 = 0; i2 <= max_order; ++i2) {
            const double tb = std::max(0.0, 1.0 - cfg.eta * i2 / cfg.n);
            e[i1 * stride + i2] = joint_geometric_expectation(joint, ta, tb);
        }
    }
    return MomentSet(lo.phi, moments_from_e_table(e, max_order, cfg));
}

MomentSet x_moments_closed(const FockVector& signal, const LocalOscillator& lo,
                           const DetectorConfig& cfg, int max_order) {
    check_order(max_order, cfg.n);
    const cdouble beta = std::polar(lo.r, lo.phi);
    return MomentSet(lo.phi, closed_moments(signal, beta, cfg, max_order));
}

MomentSet x_moments_at_lo_amplitude(const FockVector& signal, cdouble beta,
                                    const DetectorConfig& cfg, int max_order,
                                    double phase_tag) {
    check_order(max_order, cfg.n);
    return MomentSet(phase_tag, closed_moments(signal, beta, cfg, max_order));
}

double closed_form_coherent_x(cdouble alpha, const LocalOscillator& lo,
                              const DetectorConfig& cfg) {
    const double n = cfg.n;
    const double xphi = 2.0 * std::real(alpha * std::polar(1.0, -lo.phi));
    const double damp = std::exp(-cfg.eta * (lo.r * lo.r + std::norm(alpha)) /
                                     (2.0 * n) -
                                 cfg.nu);
    return 2.0 * n * damp * std::sinh(cfg.eta * lo.r * xphi / (2.0 * n));
}

double linear_limit_x(const FockVector& signal, const LocalOscillator& lo,
                      const DetectorConfig& cfg) {
    const cdouble a = mean_annihilation(signal);
    return std::exp(-cfg.nu) * cfg.eta * lo.r * 2.0 *
           std::real(a * std::polar(1.0, -lo.phi));
}

}  // namespace chd
