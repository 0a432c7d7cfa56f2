#include "chd/scenario.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "chd/errors.hpp"

namespace chd {

namespace {
using nlohmann::json;
}

FockVector Scenario::make_signal() const {
    switch (kind) {
        case SignalKind::vacuum:
            return vacuum_state(0, eps);
        case SignalKind::coherent: {
            const cdouble alpha(alpha_re, alpha_im);
            return coherent_state(alpha, coherent_cutoff(std::abs(alpha), eps), eps);
        }
        case SignalKind::squeezed:
            return squeezed_vacuum(xi, squeezed_cutoff(xi, eps), eps);
        case SignalKind::superposition:
            return superposition_0n(level, level, eps);
    }
    throw ArgumentError("unknown signal kind");
}

const char* to_string(SignalKind kind) {
    switch (kind) {
        case SignalKind::vacuum: return "vacuum";
        case SignalKind::coherent: return "coherent";
        case SignalKind::squeezed: return "squeezed";
        case SignalKind::superposition: return "superposition";
    }
    return "unknown";
}

SignalKind signal_kind_from_string(const std::string& name) {
    if (name == "vacuum") return SignalKind::vacuum;
    if (name == "coherent") return SignalKind::coherent;
    if (name == "squeezed") return SignalKind::squeezed;
    if (name == "superposition") return SignalKind::superposition;
    throw ArgumentError("unknown signal kind: " + name);
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");

    static const std::set<std::string> known = {
        "signal", "alpha_re", "alpha_im", "xi", "level", "n_diodes", "eta",
        "nu", "lo_r", "lo_phi", "sigma_x", "sigma_p", "max_order", "eps"};
    for (const auto& item : j.items()) {
        if (known.find(item.key()) == known.end()) {
            throw ArgumentError("unknown config key: " + item.key());
        }
    }

    Scenario s;
    if (j.contains("signal")) s.kind = signal_kind_from_string(j["signal"]);
    s.alpha_re = j.value("alpha_re", s.alpha_re);
    s.alpha_im = j.value("alpha_im", s.alpha_im);
    s.xi = j.value("xi", s.xi);
    s.level = j.value("level", s.level);
    s.n_diodes = j.value("n_diodes", s.n_diodes);
    s.eta = j.value("eta", s.eta);
    s.nu = j.value("nu", s.nu);
    s.lo_r = j.value("lo_r", s.lo_r);
    s.lo_phi = j.value("lo_phi", s.lo_phi);
    s.sigma_x = j.value("sigma_x", s.sigma_x);
    s.sigma_p = j.value("sigma_p", s.sigma_p);
    s.max_order = j.value("max_order", s.max_order);
    s.eps = j.value("eps", s.eps);

    // Construct the validated pieces once so bad values fail here, not
    // halfway through a run.
    (void)s.detector();
    (void)s.local_oscillator();
    (void)s.noise();
    if (s.max_order < 0 || s.max_order > s.n_diodes) {
        throw ArgumentError("max_order must lie in [0, n_diodes]");
    }
    if (!(s.eps > 0.0) || s.eps > 1e-2) {
        throw ArgumentError("eps must lie in (0, 1e-2]");
    }
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["signal"] = to_string(s.kind);
    if (s.kind == SignalKind::coherent) {
        j["alpha_re"] = s.alpha_re;
        j["alpha_im"] = s.alpha_im;
    }
    if (s.kind == SignalKind::squeezed) j["xi"] = s.xi;
    if (s.kind == SignalKind::superposition) j["level"] = s.level;
    j["n_diodes"] = s.n_diodes;
    j["eta"] = s.eta;
    j["nu"] = s.nu;
    j["lo_r"] = s.lo_r;
    j["lo_phi"] = s.lo_phi;
    if (s.sigma_x > 0.0) j["sigma_x"] = s.sigma_x;
    if (s.sigma_p > 0.0) j["sigma_p"] = s.sigma_p;
    j["max_order"] = s.max_order;
    j["eps"] = s.eps;
    return j.dump();
}

}  // namespace chd
