#include "chd/reference.hpp"

#include <algorithm>
#include <cmath>

#include "chd/errors.hpp"
#include "chd/numerics.hpp"

namespace chd::reference {

TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 const TwoModeCutoffs& cutoffs) {
    const int d1 = cutoffs.d1;
    const int d2 = cutoffs.d2;
    const int total = d1 + d2;
    const auto lf = log_factorial_table(total + 1);

    // LO amplitudes b_p at the same total-photon budget.
    const cdouble beta = std::polar(lo.r, lo.phi);
    std::vector<cdouble> b(total + 1);
    for (int p = 0; p <= total; ++p) {
        const double mag = std::exp(-0.5 * lo.r * lo.r + p * std::log(std::max(lo.r, 1e-300)) -
                                    0.5 * lf[p]);
        b[p] = (lo.r == 0.0) ? cdouble(p == 0 ? 1.0 : 0.0)
                             : std::polar(mag, p * lo.phi);
    }

    TwoModeState out(d1, d2, total, lo.phi);
    for (int n1 = 0; n1 <= d1; ++n1) {
        for (int n2 = 0; n2 <= std::min(d2, total - n1); ++n2) {
            const int s = n1 + n2;
            CompensatedSum re, im;
            for (int m = 0; m <= std::min(s, signal.cutoff()); ++m) {
                const int p = s - m;
                CompensatedSum k_sum;
                for (int j = std::max(0, n1 - p); j <= std::min(m, n1); ++j) {
                    const double sign = ((p - (n1 - j)) % 2 == 0) ? 1.0 : -1.0;
                    k_sum.add(sign * choose(m, j) * choose(p, n1 - j));
                }
                const double scale =
                    std::exp(0.5 * (lf[n1] + lf[n2] - lf[m] - lf[p]) -
                             0.5 * s * std::log(2.0));
                const cdouble term = signal.amplitude(m) * b[p] * scale * k_sum.value();
                re.add(term.real());
                im.add(term.imag());
            }
            out.at(n1, n2) = cdouble(re.value(), im.value());
        }
    }
    return out;
}

std::vector<double> povm_matrix(const DetectorConfig& cfg, int n_max) {
    if (n_max < 0) throw ArgumentError("n_max must be nonnegative");
    const int n = cfg.n;
    const auto lf = log_factorial_table(n + 1);
    std::vector<double> out(static_cast<std::size_t>(n + 1) * (n_max + 1));

    for (int k = 0; k <= n; ++k) {
        for (int ph = 0; ph <= n_max; ++ph) {
            CompensatedSum acc;
            for (int j = 0; j <= k; ++j) {
                const int idle = n - k + j;
                const double base = 1.0 - cfg.eta * idle / n;
                if (base < 0.0) throw NumericalError("POVM base went negative");
                double term;
                if (base == 0.0) {
                    // 0^ph with the binomial/dark prefactor kept
                    term = (ph == 0) ? std::exp(log_choose(lf, n, k) +
                                                log_choose(lf, k, j) - idle * cfg.nu)
                                     : 0.0;
                } else {
                    term = std::exp(log_choose(lf, n, k) + log_choose(lf, k, j) -
                                    idle * cfg.nu + ph * std::log(base));
                }
                acc.add((j % 2 == 0) ? term : -term);
            }
            out[static_cast<std::size_t>(k) * (n_max + 1) + ph] = acc.value();
        }
    }
    return out;
}

JointClickDistribution joint_click_distribution(const JointPhotonDistribution& joint,
                                                const DetectorConfig& cfg) {
    const int n = cfg.n;
    const int d1 = joint.cutoff1();
    const int d2 = joint.cutoff2();
    const int n_max = std::max(d1, d2);
    const auto povm = reference::povm_matrix(cfg, n_max);
    const auto pi = [&](int k, int ph) {
        return povm[static_cast<std::size_t>(k) * (n_max + 1) + ph];
    };

    std::vector<double> c(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int k1 = 0; k1 <= n; ++k1) {
        for (int k2 = 0; k2 <= n; ++k2) {
            CompensatedSum acc;
            for (int n1 = 0; n1 <= d1; ++n1) {
                for (int n2 = 0; n2 <= d2; ++n2) {
                    const double p = joint.probability(n1, n2);
                    if (p == 0.0) continue;
                    acc.add(p * pi(k1, n1) * pi(k2, n2));
                }
            }
            c[static_cast<std::size_t>(k1) * (n + 1) + k2] = acc.value();
        }
    }

    CompensatedSum total;
    for (double v : c) total.add(v);
    const double mass = total.value();
    if (!(mass > 0.0)) throw NumericalError("reference click mass is nonpositive");
    for (double& v : c) v /= mass;
    return JointClickDistribution{std::move(c), n, joint.phase()};
}

}  // namespace chd::reference
