#pragma once

#include <complex>
#include <vector>

#include "chd/numerics.hpp"

namespace chd {

using cdouble = std::complex<double>;

/// Pure single-mode state truncated to Fock levels 0..cutoff.
/// Invariant: sum |c_n|^2 lies in [1 - eps, 1 + 1e-12]. States that do not
/// hold enough probability mass at the requested cutoff are rejected with
/// TruncationError; nothing is ever renormalized behind the caller's back.
class FockVector {
  public:
    FockVector(std::vector<cdouble> amplitudes, double eps = kDefaultTruncationEps);

    int cutoff() const { return static_cast<int>(amp_.size()) - 1; }
    const std::vector<cdouble>& amplitudes() const { return amp_; }
    cdouble amplitude(int n) const {
        return (n >= 0 && n < static_cast<int>(amp_.size())) ? amp_[static_cast<size_t>(n)]
                                                             : cdouble{0.0, 0.0};
    }
    /// sum |c_n|^2 over the stored levels.
    double retained_norm() const { return norm_; }
    double truncation_eps() const { return eps_; }

  private:
    std::vector<cdouble> amp_;
    double norm_;
    double eps_;
};

FockVector vacuum_state(int cutoff = 0, double eps = kDefaultTruncationEps);

/// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), built in the log domain.
FockVector coherent_state(cdouble alpha, int cutoff, double eps = kDefaultTruncationEps);

/// Squeezed vacuum with real squeezing parameter xi >= 0: only even levels,
/// c_{2m} = (cosh xi)^{-1/2} (-tanh xi)^m sqrt((2m)!) / (2^m m!).
FockVector squeezed_vacuum(double xi, int cutoff, double eps = kDefaultTruncationEps);

/// (|0> + |n>)/sqrt(2), n >= 1.
FockVector superposition_0n(int n, int cutoff, double eps = kDefaultTruncationEps);

/// Smallest cutoff holding all but eps of the state's photon distribution.
int coherent_cutoff(double abs_alpha, double eps = kDefaultTruncationEps);
int squeezed_cutoff(double xi, double eps = kDefaultTruncationEps);

/// Diagonal of a state (or one arm of a two-mode state) in the number basis.
/// Entries are >= 0 and sum to the retained mass of whatever produced them.
struct PhotonDistribution {
    std::vector<double> p;

    int max_photon() const { return static_cast<int>(p.size()) - 1; }
    double sum() const;
};

PhotonDistribution photon_distribution(const FockVector& state);

/// E[t^n] over the distribution, t in [0, 1]. The workhorse for click
/// statistics: every normally ordered exponential reduces to this.
double geometric_expectation(const PhotonDistribution& dist, double t);
double geometric_expectation(const FockVector& state, double t);

double mean_photon_number(const FockVector& state);
double mean_photon_number(const PhotonDistribution& dist);

/// <a> of the stored state; feeds the linearized homodyne limit.
cdouble mean_annihilation(const FockVector& state);

}  // namespace chd
