// Command-line front end: configure a scenario, run one pipeline stage, or
// emit one of the canned figure datasets. Output is CSV (default) or JSON,
// byte-identical across reruns of the same command.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chd/click.hpp"
#include "chd/errors.hpp"
#include "chd/fock.hpp"
#include "chd/interferometer.hpp"
#include "chd/io.hpp"
#include "chd/lo_noise.hpp"
#include "chd/moments.hpp"
#include "chd/monte_carlo.hpp"
#include "chd/numerics.hpp"
#include "chd/scenario.hpp"
#include "chd/version.hpp"
#include "chd/witness.hpp"

namespace {

using namespace chd;

struct OutputOpts {
    std::string path;
    std::string format = "csv";
};

void emit(const OutputOpts& out, const NamedTables& tables) {
    const std::string text =
        out.format == "json" ? to_json(tables) : to_csv(tables);
    if (out.path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_text_file(out.path, text);
    }
}

void emit(const OutputOpts& out, const Table& table) {
    const std::string text =
        out.format == "json" ? to_json(table) : to_csv(table);
    if (out.path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_text_file(out.path, text);
    }
}

Scenario load_scenario(const std::string& path) {
    if (path.empty()) return Scenario{};
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot read config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return scenario_from_json(ss.str());
}

std::vector<double> parse_phase_grid(const std::string& text) {
    double start = 0.0, stop = 0.0;
    int count = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &start, &stop, &count, &tail) != 3) {
        throw ArgumentError("phase grid must look like start:stop:count");
    }
    return linspace(start, stop, count);
}

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) orders.push_back(std::stoi(item));
    if (orders.empty()) throw ArgumentError("order list is empty");
    std::sort(orders.begin(), orders.end());
    return orders;
}

std::vector<std::string> base_comments(const std::string& command, const Scenario& s) {
    return {std::string("click-homodyne ") + kVersion, "command: " + command,
            "config: " + scenario_to_json(s)};
}

MomentSet moments_by_route(const std::string& route, const FockVector& signal,
                           const LocalOscillator& lo, const DetectorConfig& cfg,
                           int max_order, double eps) {
    if (route == "closed") return x_moments_closed(signal, lo, cfg, max_order);
    if (route == "analytic") return x_moments_analytic(signal, lo, cfg, max_order, eps);
    if (route == "counts") {
        const TwoModeState two = mix_on_beamsplitter(signal, lo, eps);
        const JointPhotonDistribution joint(two);
        return moments_from_counts(joint_click_distribution(joint, cfg), max_order);
    }
    throw ArgumentError("unknown route: " + route);
}

std::string orders_label(const std::vector<int>& orders) {
    std::string s = "det";
    for (int o : orders) s += "_" + std::to_string(o);
    return s;
}

// ---- subcommands ------------------------------------------------------

void run_clicks(const Scenario& s, const OutputOpts& out) {
    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();
    const TwoModeState two = mix_on_beamsplitter(signal, s.local_oscillator(), s.eps);
    const JointPhotonDistribution joint(two);
    const JointClickDistribution clicks = joint_click_distribution(joint, cfg);
    const DifferenceDistribution diff = difference_distribution(clicks);

    Table joint_t;
    joint_t.comments = base_comments("clicks", s);
    joint_t.columns = {"k1", "k2", "probability"};
    for (int k1 = 0; k1 <= cfg.n; ++k1) {
        for (int k2 = 0; k2 <= cfg.n; ++k2) {
            joint_t.rows.push_back({static_cast<double>(k1),
                                    static_cast<double>(k2), clicks.at(k1, k2)});
        }
    }

    Table diff_t;
    diff_t.columns = {"delta", "probability"};
    for (int d = -cfg.n; d <= cfg.n; ++d) {
        diff_t.rows.push_back({static_cast<double>(d), diff.at(d)});
    }

    emit(out, NamedTables{{"joint", joint_t}, {"difference", diff_t}});
}

void run_moments(const Scenario& s, const OutputOpts& out, const std::string& route,
                 const std::vector<double>& phases) {
    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();

    Table t;
    t.comments = base_comments("moments", s);
    t.comments.push_back("route: " + route);
    t.columns = {"phase"};
    for (int m = 1; m <= s.max_order; ++m) t.columns.push_back("m" + std::to_string(m));
    for (double phi : phases) {
        const LocalOscillator lo(s.lo_r, phi);
        const MomentSet ms = moments_by_route(route, signal, lo, cfg, s.max_order, s.eps);
        std::vector<double> row{phi};
        for (int m = 1; m <= s.max_order; ++m) row.push_back(ms.m[m]);
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void run_witness(const Scenario& s, const OutputOpts& out, const std::string& route,
                 const std::vector<double>& phases) {
    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();

    Table t;
    t.comments = base_comments("witness", s);
    t.comments.push_back("route: " + route);
    t.columns = {"phase"};
    bool named = false;
    for (double phi : phases) {
        const LocalOscillator lo(s.lo_r, phi);
        const MomentSet ms = moments_by_route(route, signal, lo, cfg, s.max_order, s.eps);
        const auto results = witness_scan(ms);
        if (!named) {
            for (const auto& r : results) t.columns.push_back(orders_label(r.orders));
            named = true;
        }
        std::vector<double> row{phi};
        for (const auto& r : results) row.push_back(r.determinant);
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void run_noise(const Scenario& s, const OutputOpts& out,
               const std::vector<double>& phases, int nodes) {
    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();
    const NoiseModel noise = s.noise();

    Table t;
    t.comments = base_comments("noise", s);
    t.columns = {"phase"};
    for (int m = 1; m <= s.max_order; ++m) t.columns.push_back("m" + std::to_string(m));
    t.columns.push_back("variance");
    for (double phi : phases) {
        const LocalOscillator lo(s.lo_r, phi);
        const MomentSet ms =
            noise_averaged_moments(signal, lo, noise, cfg, s.max_order, nodes);
        std::vector<double> row{phi};
        for (int m = 1; m <= s.max_order; ++m) row.push_back(ms.m[m]);
        row.push_back(normally_ordered_variance(ms));
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void run_montecarlo(const Scenario& s, const OutputOpts& out, std::uint64_t shots,
                    std::uint64_t seed, int n_bootstrap,
                    const std::vector<int>& orders) {
    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();
    const TwoModeState two = mix_on_beamsplitter(signal, s.local_oscillator(), s.eps);
    const JointPhotonDistribution joint(two);
    const JointClickDistribution exact = joint_click_distribution(joint, cfg);

    const int max_order = 2 * orders.back();
    const double exact_det =
        hankel_determinant(moments_from_counts(exact, max_order), orders);
    const MonteCarloWitness mc =
        monte_carlo_witness(exact, orders, shots, seed, n_bootstrap);

    Table t;
    t.comments = base_comments("montecarlo", s);
    t.comments.push_back("orders: " + orders_label(orders));
    t.columns = {"value", "se",    "nonclassical", "exact_value",
                 "shots", "seed",  "bootstrap"};
    t.rows.push_back({mc.value, mc.se, mc.nonclassical ? 1.0 : 0.0, exact_det,
                      static_cast<double>(shots), static_cast<double>(seed),
                      static_cast<double>(n_bootstrap)});
    emit(out, t);
}

// ---- figure presets ---------------------------------------------------

void figure_fig1b(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::coherent;
    s.alpha_re = 2.0;
    s.alpha_im = 0.0;
    s.n_diodes = 4;
    s.eta = 1.0;
    s.nu = 0.0;
    s.lo_r = 2.0;

    const FockVector signal = s.make_signal();
    const DetectorConfig cfg = s.detector();
    Table t;
    t.comments = base_comments("figure fig1b", s);
    t.comments.push_back("difference-count landscape over the LO phase");
    t.columns = {"phase", "delta", "probability"};
    for (double phi : linspace(0.0, 2.0 * kPi, 73)) {
        const TwoModeState two =
            mix_on_beamsplitter(signal, LocalOscillator(s.lo_r, phi), s.eps);
        const JointPhotonDistribution joint(two);
        const DifferenceDistribution diff =
            difference_distribution(joint_click_distribution(joint, cfg));
        for (int d = -cfg.n; d <= cfg.n; ++d) {
            t.rows.push_back({phi, static_cast<double>(d), diff.at(d)});
        }
    }
    emit(out, t);
}

void figure_fig1c(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::coherent;
    s.n_diodes = 4;
    s.eta = 1.0;
    s.nu = 0.0;

    Table t;
    t.comments = base_comments("figure fig1c", s);
    t.comments.push_back("first moment of a coherent signal, alpha = r in {2,4,8}");
    t.columns = {"phase", "x_r2", "x_r4", "x_r8"};
    const DetectorConfig cfg = s.detector();
    for (double phi : linspace(0.0, 2.0 * kPi, 181)) {
        std::vector<double> row{phi};
        for (double r : {2.0, 4.0, 8.0}) {
            row.push_back(closed_form_coherent_x(cdouble(r, 0.0),
                                                 LocalOscillator(r, phi), cfg));
        }
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void figure_fig2(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::superposition;
    s.n_diodes = 4;
    s.eta = 0.5;
    s.nu = 0.25;
    s.lo_r = 2.0;
    s.max_order = 1;

    const DetectorConfig cfg = s.detector();
    Table t;
    t.comments = base_comments("figure fig2", s);
    t.comments.push_back("first moment of (|0>+|n>)/sqrt(2); period shrinks as 2pi/n");
    t.columns = {"phase"};
    for (int n = 1; n <= 5; ++n) t.columns.push_back("x_n" + std::to_string(n));
    const auto phases = linspace(0.0, 2.0 * kPi, 361);
    std::vector<FockVector> signals;
    for (int n = 1; n <= 5; ++n) signals.push_back(superposition_0n(n, n, s.eps));
    for (double phi : phases) {
        std::vector<double> row{phi};
        for (const auto& sig : signals) {
            row.push_back(
                x_moments_closed(sig, LocalOscillator(s.lo_r, phi), cfg, 1).m[1]);
        }
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void figure_fig3(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::squeezed;
    s.n_diodes = 4;
    s.eta = 0.5;
    s.nu = 0.25;
    s.lo_r = 2.0;
    s.max_order = 2;

    const DetectorConfig cfg = s.detector();
    Table t;
    t.comments = base_comments("figure fig3", s);
    t.comments.push_back(
        "normally ordered variance of squeezed vacuum at phi = 0 and pi/2");
    t.columns = {"xi", "var_squeezed", "var_antisqueezed"};
    for (int i = 1; i <= 30; ++i) {
        const double xi = 0.1 * i;
        const FockVector sig = squeezed_vacuum(xi, squeezed_cutoff(xi, s.eps), s.eps);
        const double v0 = normally_ordered_variance(
            x_moments_closed(sig, LocalOscillator(s.lo_r, 0.0), cfg, 2));
        const double v1 = normally_ordered_variance(
            x_moments_closed(sig, LocalOscillator(s.lo_r, 0.5 * kPi), cfg, 2));
        t.rows.push_back({xi, v0, v1});
    }
    emit(out, t);
}

void figure_fig4(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::superposition;
    s.level = 2;
    s.n_diodes = 4;
    s.nu = 0.25;
    s.lo_r = 2.0;
    s.max_order = 4;

    Table t;
    t.comments = base_comments("figure fig4", s);
    t.comments.push_back(
        "variance stays nonnegative for (|0>+|2>)/sqrt(2); the order-{0,1,2} "
        "minor goes negative");
    t.columns = {"phase", "eta", "var", "det3"};
    const FockVector sig = superposition_0n(2, 2, s.eps);
    for (int e = 1; e <= 10; ++e) {
        const double eta = 0.1 * e;
        const DetectorConfig cfg(s.n_diodes, eta, s.nu);
        for (double phi : linspace(0.0, 2.0 * kPi, 73)) {
            const MomentSet ms =
                x_moments_closed(sig, LocalOscillator(s.lo_r, phi), cfg, 4);
            t.rows.push_back({phi, eta, normally_ordered_variance(ms),
                              hankel_determinant(ms, {0, 1, 2})});
        }
    }
    emit(out, t);
}

void figure_fig5(const OutputOpts& out) {
    Scenario s;
    s.kind = SignalKind::squeezed;
    s.xi = 0.5;
    s.n_diodes = 4;
    s.eta = 0.5;
    s.nu = 0.25;
    s.lo_r = 2.0;
    s.max_order = 2;

    const DetectorConfig cfg = s.detector();
    const FockVector sig = s.make_signal();
    Table t;
    t.comments = base_comments("figure fig5", s);
    t.comments.push_back(
        "noise-averaged variance: amplitude noise sigma_x = 2, phase noise "
        "sigma_p = 1.2");
    t.columns = {"phase", "var_noiseless", "var_amplitude", "var_phase",
                 "var_combined"};
    const NoiseModel none(0.0, 0.0), amp(2.0, 0.0), ph(0.0, 1.2), both(2.0, 1.2);
    for (double phi : linspace(0.0, kPi, 181)) {
        const LocalOscillator lo(s.lo_r, phi);
        std::vector<double> row{phi};
        for (const NoiseModel* nm : {&none, &amp, &ph, &both}) {
            row.push_back(normally_ordered_variance(
                noise_averaged_moments(sig, lo, *nm, cfg, 2)));
        }
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced homodyne detection with click-counting detector arrays"};
    app.require_subcommand(1);
    app.fallthrough();  // --config/--out/--format may follow the subcommand

    std::string config_path;
    OutputOpts out;
    app.add_option("--config", config_path, "scenario JSON file");
    app.add_option("--out", out.path, "output file (default: stdout)");
    app.add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string phase_grid;
    std::string route = "closed";
    std::uint64_t shots = 1000000;
    std::uint64_t seed = 12345;
    int n_bootstrap = 200;
    int nodes = 21;
    std::string orders_text = "0,1";
    std::string figure_name;

    auto* c_clicks = app.add_subcommand("clicks", "exact joint click statistics");
    auto* c_moments = app.add_subcommand("moments", "normally ordered moments");
    c_moments->add_option("--phase-grid", phase_grid, "start:stop:count");
    c_moments->add_option("--route", route, "closed, analytic, or counts")
        ->check(CLI::IsMember({"closed", "analytic", "counts"}));
    auto* c_witness = app.add_subcommand("witness", "moment-matrix determinants");
    c_witness->add_option("--phase-grid", phase_grid, "start:stop:count");
    c_witness->add_option("--route", route, "closed, analytic, or counts")
        ->check(CLI::IsMember({"closed", "analytic", "counts"}));
    auto* c_noise = app.add_subcommand("noise", "LO-noise-averaged moments");
    c_noise->add_option("--phase-grid", phase_grid, "start:stop:count");
    c_noise->add_option("--nodes", nodes, "initial Gauss-Hermite nodes per axis");
    auto* c_mc = app.add_subcommand("montecarlo", "sampled witness with bootstrap");
    c_mc->add_option("--shots", shots, "number of simulated shots");
    c_mc->add_option("--seed", seed, "RNG seed");
    c_mc->add_option("--bootstrap", n_bootstrap, "bootstrap replicates");
    c_mc->add_option("--orders", orders_text, "witness index set, e.g. 0,1,2");
    auto* c_fig = app.add_subcommand("figure", "canned figure datasets");
    c_fig->add_option("name", figure_name, "which figure")
        ->required()
        ->check(CLI::IsMember({"fig1b", "fig1c", "fig2", "fig3", "fig4", "fig5"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const Scenario s = load_scenario(config_path);
        const std::vector<double> phases =
            phase_grid.empty() ? std::vector<double>{s.lo_phi}
                               : parse_phase_grid(phase_grid);

        if (c_clicks->parsed()) {
            run_clicks(s, out);
        } else if (c_moments->parsed()) {
            run_moments(s, out, route, phases);
        } else if (c_witness->parsed()) {
            run_witness(s, out, route, phases);
        } else if (c_noise->parsed()) {
            run_noise(s, out, phases, nodes);
        } else if (c_mc->parsed()) {
            run_montecarlo(s, out, shots, seed, n_bootstrap,
                           parse_orders(orders_text));
        } else if (c_fig->parsed()) {
            if (figure_name == "fig1b") figure_fig1b(out);
            else if (figure_name == "fig1c") figure_fig1c(out);
            else if (figure_name == "fig2") figure_fig2(out);
            else if (figure_name == "fig3") figure_fig3(out);
            else if (figure_name == "fig4") figure_fig4(out);
            else figure_fig5(out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
