#include "chd/click.hpp"

#include <cmath>
#include <string>

#include "chd/errors.hpp"
#include "chd/parallel.hpp"

namespace chd {

namespace {

constexpr double kNegativeFloor = -1e-12;
constexpr double kSumTolerance = 1e-10;

/// Clamp tiny negatives, validate the total, scale to sum exactly 1.
void finalize_probabilities(std::vector<double>& c, const char* what) {
    for (double& v : c) {
        if (v < 0.0) {
            if (v < kNegativeFloor)
                throw NumericalError(std::string(what) + ": probability " +
                                     std::to_string(v) + " below the -1e-12 floor");
            v = 0.0;
        }
    }
    CompensatedSum s;
    for (double v : c) s.add(v);
    double total = s.value();
    if (std::abs(total - 1.0) > kSumTolerance)
        throw NumericalError(std::string(what) + ": probabilities sum to " +
                             std::to_string(total) + ", off 1 by more than 1e-10");
    for (double& v : c) v /= total;
}

/// dark[o][k] = P(k total clicks | o photon-lit diodes), k >= o.
std::vector<double> dark_count_table(int n, double nu) {
    double pd = -std::expm1(-nu);  // 1 - e^{-nu}
    double qd = std::exp(-nu);
    size_t stride = static_cast<size_t>(n) + 1;
    std::vector<double> dark(stride * stride, 0.0);
    for (int o = 0; o <= n; ++o) {
        // Binomial(n - o, pd) shifted by o.
        double base = 1.0;
        for (int j = 0; j < n - o; ++j) base *= qd;  // all dark diodes silent
        double cur = base;
        for (int k = o; k <= n; ++k) {
            dark[static_cast<size_t>(o) * stride + static_cast<size_t>(k)] = cur;
            // advance Binomial pmf: multiply by ratio ((n-o)-(k-o))/(k-o+1) * pd/qd
            int j = k - o;
            if (k < n) cur = cur * (n - o - j) / (j + 1.0) * (pd / qd);
        }
    }
    return dark;
}

}  // namespace

DetectorConfig::DetectorConfig(int n_, double eta_, double nu_) : n(n_), eta(eta_), nu(nu_) {
    if (n < 1) throw ArgumentError("DetectorConfig: n must be >= 1");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ArgumentError("DetectorConfig: eta must lie in [0, 1]");
    if (!(nu >= 0.0)) throw ArgumentError("DetectorConfig: nu must be >= 0");
}

std::vector<double> povm_matrix(const DetectorConfig& cfg, int n_max) {
    if (n_max < 0) throw ArgumentError("povm_matrix: n_max < 0");
    const int n = cfg.n;
    const size_t cols = static_cast<size_t>(n_max) + 1;
    const size_t stride = static_cast<size_t>(n) + 1;
    auto dark = dark_count_table(n, cfg.nu);
    std::vector<double> pov(stride * cols, 0.0);

    // q[o] = P(o diodes lit | m photons); one photon at a time.
    std::vector<double> q(stride, 0.0), qn(stride, 0.0);
    q[0] = 1.0;
    for (int m = 0;; ++m) {
        for (int k = 0; k <= n; ++k) {
            double acc = 0.0;
            for (int o = 0; o <= k; ++o)
                acc += q[static_cast<size_t>(o)] *
                       dark[static_cast<size_t>(o) * stride + static_cast<size_t>(k)];
            pov[static_cast<size_t>(k) * cols + static_cast<size_t>(m)] = acc;
        }
        if (m == n_max) break;
        for (int o = 0; o <= n; ++o) {
            double stay = 1.0 - cfg.eta + cfg.eta * o / n;
            double enter = (o > 0) ? cfg.eta * (n - o + 1.0) / n : 0.0;
            qn[static_cast<size_t>(o)] =
                q[static_cast<size_t>(o)] * stay +
                (o > 0 ? q[static_cast<size_t>(o - 1)] * enter : 0.0);
        }
        std::swap(q, qn);
    }
    return pov;
}

ClickDistribution single_click_distribution(const PhotonDistribution& dist,
                                            const DetectorConfig& cfg) {
    auto pov = povm_matrix(cfg, dist.max_photon());
    const size_t cols = dist.p.size();
    ClickDistribution out;
    out.c.resize(static_cast<size_t>(cfg.n) + 1);
    for (int k = 0; k <= cfg.n; ++k) {
        CompensatedSum s;
        for (size_t m = 0; m < cols; ++m)
            s.add(dist.p[m] * pov[static_cast<size_t>(k) * cols + m]);
        out.c[static_cast<size_t>(k)] = s.value();
    }
    finalize_probabilities(out.c, "single_click_distribution");
    return out;
}

JointClickDistribution joint_click_distribution(const JointPhotonDistribution& joint,
                                                const DetectorConfig& cfg) {
    const int n = cfg.n;
    const int rows = std::min(joint.cutoff1(), joint.total_cutoff());
    const int cols2 = joint.row_length(0);  // widest row
    const int n_max = std::max(rows, cols2);
    auto pov = povm_matrix(cfg, n_max);
    const size_t pcols = static_cast<size_t>(n_max) + 1;

    // t[n1][k2] = sum_{n2} p(n1, n2) P(k2 | n2); rows independent.
    std::vector<double> t((static_cast<size_t>(rows) + 1) * (static_cast<size_t>(n) + 1));
#pragma omp parallel for num_threads(thread_count()) schedule(static)
    for (int n1 = 0; n1 <= rows; ++n1)
        for (int k2 = 0; k2 <= n; ++k2) {
            double acc = 0.0;
            for (int n2 = 0; n2 <= joint.row_length(n1); ++n2)
                acc += joint.probability(n1, n2) *
                       pov[static_cast<size_t>(k2) * pcols + static_cast<size_t>(n2)];
            t[static_cast<size_t>(n1) * (n + 1) + static_cast<size_t>(k2)] = acc;
        }

    JointClickDistribution out;
    out.n = n;
    out.phase = joint.phase();
    out.c.assign((static_cast<size_t>(n) + 1) * (static_cast<size_t>(n) + 1), 0.0);
#pragma omp parallel for num_threads(thread_count()) schedule(static)
    for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2) {
            CompensatedSum s;
            for (int n1 = 0; n1 <= rows; ++n1)
                s.add(pov[static_cast<size_t>(k1) * pcols + static_cast<size_t>(n1)] *
                      t[static_cast<size_t>(n1) * (n + 1) + static_cast<size_t>(k2)]);
            out.c[static_cast<size_t>(k1) * (n + 1) + static_cast<size_t>(k2)] = s.value();
        }
    finalize_probabilities(out.c, "joint_click_distribution");
    return out;
}

DifferenceDistribution difference_distribution(const JointClickDistribution& joint) {
    DifferenceDistribution out;
    out.n = joint.n;
    out.phase = joint.phase;
    out.c.assign(2 * static_cast<size_t>(joint.n) + 1, 0.0);
    for (int k1 = 0; k1 <= joint.n; ++k1)
        for (int k2 = 0; k2 <= joint.n; ++k2)
            out.c[static_cast<size_t>(k1 - k2 + joint.n)] += joint.at(k1, k2);
    return out;
}

}  // namespace chd
