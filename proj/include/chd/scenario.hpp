#pragma once

#include <string>

#include "chd/click.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/lo_noise.hpp"

namespace chd {

enum class SignalKind { vacuum, coherent, squeezed, superposition };

/// Everything one run needs: signal choice, detector array, LO, noise.
/// JSON round-trips through scenario_from_json / scenario_to_json; missing
/// keys keep the defaults below, unknown top-level keys are rejected.
struct Scenario {
    SignalKind kind = SignalKind::coherent;
    double alpha_re = 2.0;
    double alpha_im = 0.0;
    double xi = 0.5;
    int level = 2;  ///< n of the (|0> + |n>)/sqrt(2) signal

    int n_diodes = 4;
    double eta = 0.5;
    double nu = 0.25;

    double lo_r = 2.0;
    double lo_phi = 0.0;

    double sigma_x = 0.0;
    double sigma_p = 0.0;

    int max_order = 4;
    double eps = kDefaultTruncationEps;

    FockVector make_signal() const;
    DetectorConfig detector() const { return DetectorConfig(n_diodes, eta, nu); }
    LocalOscillator local_oscillator() const { return LocalOscillator(lo_r, lo_phi); }
    NoiseModel noise() const { return NoiseModel(sigma_x, sigma_p); }
    bool has_noise() const { return sigma_x > 0.0 || sigma_p > 0.0; }
};

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);

const char* to_string(SignalKind kind);
SignalKind signal_kind_from_string(const std::string& name);

}  // namespace chd
