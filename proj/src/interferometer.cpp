#include "chd/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chd/errors.hpp"
#include "chd/parallel.hpp"

namespace chd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The two displacement matrices plus the intermediate product dominate
// memory; refuse absurd sizes instead of letting the allocator die.
constexpr size_t kMaxWorkspaceBytes = size_t{1} << 31;  // 2 GiB

double reduce_phase(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    return p;
}

}  // namespace

LocalOscillator::LocalOscillator(double r_, double phi_) : r(r_), phi(reduce_phase(phi_)) {
    if (!(r >= 0.0)) throw ArgumentError("LocalOscillator: r must be >= 0");
}

TwoModeState::TwoModeState(int cutoff1, int cutoff2, int total_cutoff, double phase)
    : d1_(cutoff1), d2_(cutoff2), total_(total_cutoff), phase_(phase) {
    if (d1_ < 0 || d2_ < 0) throw ArgumentError("TwoModeState: negative cutoff");
    if (total_ < 0 || total_ > d1_ + d2_)
        throw ArgumentError("TwoModeState: total cutoff outside [0, d1 + d2]");
    row_offset_.resize(static_cast<size_t>(std::min(d1_, total_)) + 2);
    row_offset_[0] = 0;
    for (int n1 = 0; n1 <= std::min(d1_, total_); ++n1)
        row_offset_[static_cast<size_t>(n1) + 1] =
            row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(row_length(n1)) + 1;
    amp_.assign(row_offset_.back(), cdouble{0.0, 0.0});
}

int TwoModeState::row_length(int n1) const { return std::min(d2_, total_ - n1); }

cdouble TwoModeState::amplitude(int n1, int n2) const {
    if (n1 < 0 || n2 < 0 || n1 > std::min(d1_, total_) || n2 > row_length(n1))
        return cdouble{0.0, 0.0};
    return amp_[row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(n2)];
}

cdouble& TwoModeState::at(int n1, int n2) {
    return amp_[row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(n2)];
}

double TwoModeState::retained_norm() const {
    CompensatedSum s;
    for (const auto& a : amp_) s.add(std::norm(a));
    return s.value();
}

namespace {

// One diagonal of <n|D(gamma)|k> at fixed delta = |n - k|. With x = |gamma|^2 the
// entries F_j = e^{-x/2} pref^delta sqrt(j!/(j+delta)!) L_j^{(delta)}(x) satisfy
//   sqrt((j+1)(j+delta+1)) F_{j+1} = (2j+1+delta-x) F_j - sqrt(j(j+delta)) F_{j-1},
// where pref = gamma on the n >= k side and -conj(gamma) on n < k. Stepping j
// upward follows the dominant solution both while F climbs out of the
// classically forbidden head and through the oscillatory bulk; a row- or
// column-wise sweep instead amplifies roundoff by ~sqrt(C(k, n)) across the
// off-diagonal wedge. Heads below double range run log-scaled until they
// surface; entries that never surface stay 0.
void displacement_diagonal(std::vector<cdouble>& d, size_t nc, int len, int delta, double x,
                           double log_mag, double phase, bool lower) {
    if (len < 0) return;
    const cdouble rot = std::polar(1.0, phase);
    auto put = [&](int j, double v) {
        size_t row = static_cast<size_t>(lower ? j + delta : j);
        size_t col = static_cast<size_t>(lower ? j : j + delta);
        d[row * nc + col] = v * rot;
    };
    double scale = 0.0;  // true F_j = stored * exp(scale), scale <= 0
    double prev = 0.0, cur;
    if (log_mag > -650.0) {
        cur = std::exp(log_mag);
    } else {
        cur = 1.0;
        scale = log_mag;
    }
    put(0, scale == 0.0 ? cur : cur * std::exp(scale));
    for (int j = 0; j < len; ++j) {
        double dj = static_cast<double>(j), dd = static_cast<double>(delta);
        double nxt = ((2.0 * dj + 1.0 + dd - x) * cur - std::sqrt(dj * (dj + dd)) * prev) /
                     std::sqrt((dj + 1.0) * (dj + 1.0 + dd));
        prev = cur;
        cur = nxt;
        if (scale < 0.0 && std::abs(cur) > 1e250) {
            prev *= 1e-250;
            cur *= 1e-250;
            scale += 250.0 * std::log(10.0);
            if (scale > 0.0) scale = 0.0;  // true entries are bounded by 1
        }
        put(j + 1, scale == 0.0 ? cur : cur * std::exp(scale));
    }
}

}  // namespace

std::vector<cdouble> displacement_matrix(cdouble gamma, int rows, int cols) {
    size_t nr = static_cast<size_t>(rows) + 1, nc = static_cast<size_t>(cols) + 1;
    std::vector<cdouble> d(nr * nc, cdouble{0.0, 0.0});
    const double x = std::norm(gamma);
    if (x == 0.0) {
        for (int n = 0; n <= std::min(rows, cols); ++n)
            d[static_cast<size_t>(n) * nc + static_cast<size_t>(n)] = 1.0;
        return d;
    }
    const double lg = 0.5 * std::log(x);
    const double arg_lo = std::arg(gamma);
    const double arg_up = std::arg(-std::conj(gamma));
    for (int delta = 0; delta <= rows; ++delta) {
        double log_mag = delta * lg - 0.5 * x - 0.5 * std::lgamma(delta + 1.0);
        displacement_diagonal(d, nc, std::min(cols, rows - delta), delta, x, log_mag,
                              delta * arg_lo, true);
    }
    for (int delta = 1; delta <= cols; ++delta) {
        double log_mag = delta * lg - 0.5 * x - 0.5 * std::lgamma(delta + 1.0);
        displacement_diagonal(d, nc, std::min(rows, cols - delta), delta, x, log_mag,
                              delta * arg_up, false);
    }
    return d;
}

int total_photon_budget(const FockVector& signal, double lo_r, double eps) {
    if (!(eps > 0.0)) throw ArgumentError("total_photon_budget: eps must be positive");
    // P(n_sig + n_lo > S) <= tail_Poisson(S - D_sig); the signal cutoff is
    // already tight, so budget the LO tail from the top signal level.
    return signal.cutoff() + poisson_tail_cutoff(lo_r * lo_r, eps);
}

namespace {

TwoModeState mix_impl(const FockVector& signal, const LocalOscillator& lo, int d1, int d2,
                      int total, double eps) {
    const int ds = signal.cutoff();
    const int r1 = std::min(d1, total);
    const int r2 = std::min(d2, total);
    const size_t nc = static_cast<size_t>(ds) + 1;
    // split table, two displacement matrices, intermediate product, output
    size_t bytes = sizeof(cdouble) *
                   (nc * nc +
                    nc * (2 * (static_cast<size_t>(r1) + 1) + static_cast<size_t>(r2) + 1) +
                    (static_cast<size_t>(r1) + 1) * (static_cast<size_t>(r2) + 1));
    if (bytes > kMaxWorkspaceBytes)
        throw TruncationError(
            "mix_on_beamsplitter: workspace would exceed 2 GiB; lower the cutoffs "
            "(moment routines that avoid the two-mode expansion handle such states)");

    // Split signal over the arms: level m -> sqrt(C(m,j)/2^m) at (j, m-j).
    auto lf = log_factorial_table(ds);
    std::vector<cdouble> mid(nc * nc, cdouble{0.0, 0.0});
    const double ln2 = std::log(2.0);
    for (int m = 0; m <= ds; ++m) {
        cdouble cm = signal.amplitudes()[static_cast<size_t>(m)];
        if (cm == cdouble{0.0, 0.0}) continue;
        for (int j = 0; j <= m; ++j) {
            double w = std::exp(0.5 * (log_choose(lf, m, j) - m * ln2));
            mid[static_cast<size_t>(j) * nc + static_cast<size_t>(m - j)] = cm * w;
        }
    }

    cdouble gamma = lo.amplitude() / std::sqrt(2.0);
    auto dm1 = displacement_matrix(gamma, r1, ds);
    auto dm2 = displacement_matrix(-gamma, r2, ds);

    // inter[n1][k] = sum_j dm1[n1][j] mid[j][k]; rows are independent.
    std::vector<cdouble> inter((static_cast<size_t>(r1) + 1) * nc);
#pragma omp parallel for num_threads(thread_count()) schedule(static)
    for (int n1 = 0; n1 <= r1; ++n1) {
        const cdouble* drow = &dm1[static_cast<size_t>(n1) * nc];
        cdouble* irow = &inter[static_cast<size_t>(n1) * nc];
        for (int k = 0; k <= ds; ++k) {
            cdouble acc{0.0, 0.0};
            for (int j = 0; j <= ds - k; ++j)
                acc += drow[j] * mid[static_cast<size_t>(j) * nc + static_cast<size_t>(k)];
            irow[k] = acc;
        }
    }

    TwoModeState out(d1, d2, total, lo.phi);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 16)
    for (int n1 = 0; n1 <= r1; ++n1) {
        const cdouble* irow = &inter[static_cast<size_t>(n1) * nc];
        for (int n2 = 0; n2 <= out.row_length(n1); ++n2) {
            const cdouble* drow = &dm2[static_cast<size_t>(n2) * nc];
            cdouble acc{0.0, 0.0};
            for (int k = 0; k <= ds; ++k) acc += drow[k] * irow[k];
            out.at(n1, n2) = acc;
        }
    }

    double kept = out.retained_norm();
    if (kept < signal.retained_norm() - eps - 1e-12)
        throw TruncationError("mix_on_beamsplitter: cutoffs keep " + std::to_string(kept) +
                              " of " + std::to_string(signal.retained_norm()) +
                              "; raise the cutoffs");
    if (kept > signal.retained_norm() + 1e-9)
        throw NumericalError("mix_on_beamsplitter: output mass " + std::to_string(kept) +
                             " exceeds the input mass; displacement table lost accuracy");
    return out;
}

}  // namespace

TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 double eps) {
    // Tighter internal budget: downstream identities (unitarity at 1e-12,
    // route agreement at 1e-10 after renormalization) need headroom.
    double budget = eps * 1e-4;
    int total = total_photon_budget(signal, lo.r, budget);
    return mix_impl(signal, lo, total, total, total, budget);
}

TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 TwoModeCutoffs cutoffs, double eps) {
    if (cutoffs.d1 < 0 || cutoffs.d2 < 0)
        throw ArgumentError("mix_on_beamsplitter: negative cutoff");
    return mix_impl(signal, lo, cutoffs.d1, cutoffs.d2, cutoffs.d1 + cutoffs.d2, eps);
}

JointPhotonDistribution::JointPhotonDistribution(const TwoModeState& state)
    : d1_(state.cutoff1()),
      d2_(state.cutoff2()),
      total_(state.total_cutoff()),
      phase_(state.phase()) {
    int rows = std::min(d1_, total_);
    row_offset_.resize(static_cast<size_t>(rows) + 2);
    row_offset_[0] = 0;
    for (int n1 = 0; n1 <= rows; ++n1)
        row_offset_[static_cast<size_t>(n1) + 1] =
            row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(row_length(n1)) + 1;
    p_.resize(row_offset_.back());
    for (int n1 = 0; n1 <= rows; ++n1)
        for (int n2 = 0; n2 <= row_length(n1); ++n2)
            p_[row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(n2)] =
                std::norm(state.amplitude(n1, n2));
}

int JointPhotonDistribution::row_length(int n1) const { return std::min(d2_, total_ - n1); }

double JointPhotonDistribution::probability(int n1, int n2) const {
    if (n1 < 0 || n2 < 0 || n1 > std::min(d1_, total_) || n2 > row_length(n1)) return 0.0;
    return p_[row_offset_[static_cast<size_t>(n1)] + static_cast<size_t>(n2)];
}

double JointPhotonDistribution::sum() const {
    CompensatedSum s;
    for (double v : p_) s.add(v);
    return s.value();
}

PhotonDistribution marginal_distribution(const JointPhotonDistribution& joint, int arm) {
    if (arm != 1 && arm != 2) throw ArgumentError("marginal_distribution: arm must be 1 or 2");
    int rows = std::min(joint.cutoff1(), joint.total_cutoff());
    PhotonDistribution d;
    d.p.assign(static_cast<size_t>(arm == 1 ? rows : joint.row_length(0)) + 1, 0.0);
    for (int n1 = 0; n1 <= rows; ++n1)
        for (int n2 = 0; n2 <= joint.row_length(n1); ++n2)
            d.p[static_cast<size_t>(arm == 1 ? n1 : n2)] += joint.probability(n1, n2);
    return d;
}

double joint_geometric_expectation(const JointPhotonDistribution& joint, double t1, double t2) {
    if (!(t1 >= 0.0 && t1 <= 1.0 && t2 >= 0.0 && t2 <= 1.0))
        throw ArgumentError("joint_geometric_expectation: t1, t2 must lie in [0, 1]");
    int rows = std::min(joint.cutoff1(), joint.total_cutoff());
    CompensatedSum s;
    double p1 = 1.0;
    for (int n1 = 0; n1 <= rows; ++n1) {
        double p2 = p1;  // t1^{n1} t2^0
        for (int n2 = 0; n2 <= joint.row_length(n1); ++n2) {
            s.add(joint.probability(n1, n2) * p2);
            p2 *= t2;
        }
        p1 *= t1;
    }
    return s.value();
}

}  // namespace chd
