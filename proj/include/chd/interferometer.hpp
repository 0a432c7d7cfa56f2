#pragma once

#include <complex>
#include <vector>

#include "chd/fock.hpp"

namespace chd {

/// Strong classical reference beam: complex amplitude r e^{i phi}.
struct LocalOscillator {
    double r;
    double phi;

    /// r must be >= 0; phi is reduced to [0, 2pi).
    LocalOscillator(double r_, double phi_);
    cdouble amplitude() const { return std::polar(r, phi); }
};

/// Two output modes of the 50:50 splitter, truncated to n1 <= cutoff1,
/// n2 <= cutoff2, n1 + n2 <= total_cutoff. Amplitudes inside the kept region
/// are exact (up to roundoff); only cells outside it are dropped, and the
/// constructor of the mixing routine verifies the dropped mass is in budget.
class TwoModeState {
  public:
    TwoModeState(int cutoff1, int cutoff2, int total_cutoff, double phase);

    int cutoff1() const { return d1_; }
    int cutoff2() const { return d2_; }
    int total_cutoff() const { return total_; }
    /// LO phase the state was mixed at; carried through to click statistics.
    double phase() const { return phase_; }

    /// Highest occupied column in row n1.
    int row_length(int n1) const;
    cdouble amplitude(int n1, int n2) const;
    cdouble& at(int n1, int n2);
    double retained_norm() const;

  private:
    int d1_, d2_, total_;
    double phase_;
    std::vector<size_t> row_offset_;
    std::vector<cdouble> amp_;
};

struct TwoModeCutoffs {
    int d1;
    int d2;
};

/// arm 1 = (signal + LO)/sqrt2, arm 2 = (signal - LO)/sqrt2.
///
/// Computed by splitting the signal over both arms (binomial amplitudes) and
/// then displacing arm 1 by beta/sqrt2 and arm 2 by -beta/sqrt2; a coherent
/// LO enters a 50:50 splitter exactly this way. The explicit Fock-basis
/// route lives in chd::reference and the two are cross-checked in tests.
TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 double eps = kDefaultTruncationEps);

/// Same, but with caller-chosen cutoffs (kept region = the full rectangle).
TwoModeState mix_on_beamsplitter(const FockVector& signal, const LocalOscillator& lo,
                                 TwoModeCutoffs cutoffs, double eps = kDefaultTruncationEps);

/// Total-photon cutoff S with P(n_signal + n_LO > S) below eps.
int total_photon_budget(const FockVector& signal, double lo_r, double eps);

/// |amplitude|^2 over the same kept region, phase tag preserved.
class JointPhotonDistribution {
  public:
    explicit JointPhotonDistribution(const TwoModeState& state);

    int cutoff1() const { return d1_; }
    int cutoff2() const { return d2_; }
    int total_cutoff() const { return total_; }
    double phase() const { return phase_; }
    int row_length(int n1) const;
    double probability(int n1, int n2) const;
    double sum() const;

  private:
    int d1_, d2_, total_;
    double phase_;
    std::vector<size_t> row_offset_;
    std::vector<double> p_;
};

/// Photon distribution of one arm (arm = 1 or 2).
PhotonDistribution marginal_distribution(const JointPhotonDistribution& joint, int arm);

/// E[t1^{n1} t2^{n2}], t1, t2 in [0, 1]. Deterministic summation order.
double joint_geometric_expectation(const JointPhotonDistribution& joint, double t1, double t2);

/// Matrix elements <n|D(gamma)|k> for n <= rows, k <= cols, built diagonal by
/// diagonal with the associated-Laguerre three-term recurrence; all entries
/// bounded by 1. Row-major.
std::vector<cdouble> displacement_matrix(cdouble gamma, int rows, int cols);

}  // namespace chd
