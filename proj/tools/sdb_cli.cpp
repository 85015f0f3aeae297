// Command-line front end: simulate, verify-exact, diagnose, experiment, sweep.
// Exit codes: 0 success/pass, 1 experiment fail, 2 usage error, 3 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdb/diagnostics.hpp"
#include "sdb/dynamics.hpp"
#include "sdb/experiments.hpp"
#include "sdb/io.hpp"
#include "sdb/random_fields.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_simulate(const std::string& config_path) {
    sdb::io::RunConfig cfg = sdb::io::load_config(config_path);
    const sdb::PhysParams params = cfg.params();
    sdb::GridPtr grid = sdb::make_grid(cfg.n, cfg.box_len);
    sdb::SimState state = sdb::io::build_initial_state(cfg, grid);
    const double theta0_l2 = sdb::norm_l2(state.theta);

    fs::create_directories(cfg.out_dir);
    const std::string diag_path = (fs::path(cfg.out_dir) / "diagnostics.csv").string();
    std::ofstream diag_out(diag_path, std::ios::binary | std::ios::trunc);
    if (!diag_out.good()) throw sdb::IoError("cannot open " + diag_path);
    diag_out << sdb::io::kDiagnosticsHeader << '\n';

    std::vector<sdb::Sink> sinks;
    sinks.push_back([&](const sdb::SimState& s, const sdb::RunSample& sample) {
        const auto rec = sdb::diag::compute_record(s, params, theta0_l2, sample.cfl);
        diag_out << sdb::io::diagnostics_row(rec) << '\n';
        diag_out.flush();
        if (cfg.snapshot_every > 0 && sample.step % cfg.snapshot_every == 0) {
            const std::string snap =
                (fs::path(cfg.out_dir) / ("snapshot_" + std::to_string(sample.step) + ".sdb"))
                    .string();
            sdb::io::write_snapshot(s, params, snap);
        }
    });

    sdb::SimState final_state = sdb::run(std::move(state), params, cfg.stepper, sinks);
    sdb::io::write_snapshot(final_state, params,
                            (fs::path(cfg.out_dir) / "final.sdb").string());

    std::cout << "simulated to t = " << final_state.t << "; diagnostics in " << diag_path << "\n";
    return 0;
}

int run_verify_exact(const std::string& family, std::vector<int> resolutions, double t_check,
                     double dt) {
    using sdb::experiments::Family;
    Family fam;
    if (family == "vertical") {
        fam = Family::Vertical;
    } else if (family == "horizontal") {
        fam = Family::Horizontal;
    } else if (family == "plane_wave") {
        fam = Family::PlaneWave;
    } else if (family == "eigen_steady") {
        fam = Family::EigenSteady;
    } else {
        std::cerr << "unknown family '" << family << "'\n";
        return 2;
    }
    if (resolutions.empty()) resolutions = {64};
    sdb::PhysParams params{0.1, 1.0, 2.0 * std::numbers::pi};
    sdb::StepperConfig cfg;
    cfg.dt = dt;
    cfg.sample_every = 1000000;  // no per-step sampling needed
    auto rep = sdb::experiments::exact_family_verification(fam, resolutions, t_check, params, cfg);
    for (int n : resolutions) {
        std::cout << "n = " << n
                  << ": L2 error = " << rep.metrics.at("error_n" + std::to_string(n)) << "\n";
    }
    std::cout << (rep.pass ? "PASS" : "FAIL") << " max error " << rep.metrics.at("final_error")
              << "\n";
    return rep.pass ? 0 : 1;
}

int run_diagnose(const std::string& snapshot_path) {
    sdb::io::Snapshot snap = sdb::io::read_snapshot(snapshot_path);
    const double theta0_l2 = sdb::norm_l2(snap.state.theta);
    const auto rec = sdb::diag::compute_record(snap.state, snap.params, theta0_l2, 0.0);
    std::cout << sdb::io::kDiagnosticsHeader << '\n' << sdb::io::diagnostics_row(rec) << '\n';
    const auto spec = sdb::diag::energy_spectrum(snap.state, snap.params);
    std::cout << "eta = " << spec.eta << ", kappa_eta = " << spec.kappa_eta << '\n';
    for (std::size_t b = 0; b < spec.shell_edges.size(); ++b) {
        std::cout << "band [" << spec.shell_edges[b] << ", " << 2.0 * spec.shell_edges[b]
                  << "): " << spec.shell_energy[b] << '\n';
    }
    return 0;
}

sdb::experiments::ExperimentReport dispatch_experiment(const std::string& name,
                                                       const sdb::io::RunConfig& cfg) {
    using namespace sdb::experiments;
    const sdb::PhysParams params = cfg.params();
    sdb::GridPtr grid = sdb::make_grid(cfg.n, cfg.box_len);
    sdb::SimState initial = sdb::io::build_initial_state(cfg, grid);

    if (name == "absorbing_ball") {
        return absorbing_ball_experiment(initial, params, cfg.stepper, cfg.out_dir);
    }
    if (name == "steady_convergence") {
        return steady_convergence_experiment(initial.theta, params, cfg.stepper, 0.1, 1e-9,
                                             cfg.out_dir, &initial.u);
    }
    if (name == "energy_enstrophy") {
        return energy_enstrophy_trace(initial, params, cfg.stepper, cfg.out_dir);
    }
    if (name == "backward_uniqueness") {
        return backward_uniqueness_probe(initial, 1e-6, params, cfg.stepper, cfg.seed + 17,
                                         cfg.out_dir);
    }
    if (name == "turbulence") {
        return turbulence_diagnostics_run(initial.theta, params, cfg.stepper, 0.25, cfg.out_dir,
                                          &initial.u);
    }
    if (name == "exact_family") {
        Family fam = Family::PlaneWave;
        if (cfg.family == "vertical") fam = Family::Vertical;
        if (cfg.family == "horizontal") fam = Family::Horizontal;
        if (cfg.family == "eigen_steady") fam = Family::EigenSteady;
        return exact_family_verification(fam, {cfg.n}, cfg.stepper.t_end, params, cfg.stepper,
                                         cfg.out_dir);
    }
    throw sdb::ValidationError("unknown experiment '" + name + "'");
}

void write_report(const sdb::experiments::ExperimentReport& rep, const std::string& out_dir) {
    json doc;
    doc["name"] = rep.name;
    doc["pass"] = rep.pass;
    doc["error"] = rep.error;
    json metrics;
    for (const auto& [k, v] : rep.metrics) metrics[k] = v;
    doc["metrics"] = metrics;
    doc["series"] = rep.series_paths;
    json params;
    for (const auto& [k, v] : rep.params_used) params[k] = v;
    doc["params_used"] = params;
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / (rep.name + "_report.json")).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << '\n';
}

int run_experiment(const std::string& name, const std::string& config_path) {
    sdb::io::RunConfig cfg = sdb::io::load_config(config_path);
    auto rep = dispatch_experiment(name, cfg);
    rep.params_used["config"] = sdb::io::canonical_json(cfg);
    write_report(rep, cfg.out_dir);
    std::cout << rep.name << ": " << (rep.pass ? "PASS" : "FAIL");
    if (!rep.error.empty()) std::cout << " (" << rep.error << ")";
    std::cout << '\n';
    for (const auto& [k, v] : rep.metrics) std::cout << "  " << k << " = " << v << '\n';
    return rep.pass ? 0 : 1;
}

int run_sweep(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in.good()) throw sdb::IoError("cannot read sweep config " + config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw sdb::ParseError(std::string("sweep config is not valid JSON: ") + e.what());
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string k = it.key();
        if (k != "parallelism" && k != "out_dir" && k != "experiments") {
            throw sdb::ParseError("unknown key '" + k + "' in sweep config");
        }
    }
    const int parallelism = doc.value("parallelism", 1);
    const std::string out_dir = doc.value("out_dir", std::string("sweep_out"));
    if (!doc.contains("experiments") || !doc.at("experiments").is_array()) {
        throw sdb::ParseError("sweep config needs an 'experiments' array");
    }

    std::vector<sdb::experiments::SweepJob> jobs;
    int idx = 0;
    for (const auto& item : doc.at("experiments")) {
        for (auto it = item.begin(); it != item.end(); ++it) {
            const std::string k = it.key();
            if (k != "name" && k != "label" && k != "config") {
                throw sdb::ParseError("unknown key '" + k + "' in sweep experiment entry");
            }
        }
        const std::string name = item.at("name").get<std::string>();
        const std::string label =
            item.value("label", name + "_" + std::to_string(idx));
        sdb::io::RunConfig cfg = sdb::io::parse_config(item.at("config").dump());
        cfg.out_dir = (fs::path(out_dir) / label).string();  // disjoint output dirs
        jobs.push_back({label, [name, cfg]() { return dispatch_experiment(name, cfg); }});
        ++idx;
    }

    auto reports = sdb::experiments::sweep(jobs, parallelism);
    fs::create_directories(out_dir);
    const std::string agg_path = (fs::path(out_dir) / "sweep_summary.csv").string();
    std::ofstream agg(agg_path, std::ios::binary | std::ios::trunc);
    agg << sdb::experiments::sweep_summary_csv(reports);
    agg.close();

    bool all_pass = true;
    for (const auto& rep : reports) {
        write_report(rep, (fs::path(out_dir) / rep.params_used.at("label")).string());
        std::cout << rep.params_used.at("label") << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
        all_pass = all_pass && rep.pass;
    }
    std::cout << "summary: " << agg_path << '\n';
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral solver and diagnostics for the 2D semi-dissipative "
                 "Boussinesq system on the periodic box"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "advance a configured run, writing diagnostics");
    sim->add_option("--config", config_path, "JSON run configuration")->required();

    std::string family = "plane_wave";
    std::vector<int> resolutions;
    double t_check = 1.0;
    double dt = 1e-3;
    auto* verify = app.add_subcommand("verify-exact",
                                      "simulate a closed-form family and report the L2 error");
    verify->add_option("--family", family, "vertical|horizontal|plane_wave|eigen_steady")
        ->required();
    verify->add_option("--n", resolutions, "grid resolutions (repeatable)");
    verify->add_option("--t", t_check, "comparison time");
    verify->add_option("--dt", dt, "time step");

    std::string snapshot_path;
    auto* diag = app.add_subcommand("diagnose", "print diagnostics of a snapshot file");
    diag->add_option("--snapshot", snapshot_path, "snapshot path")->required();

    std::string experiment_name;
    auto* exp = app.add_subcommand("experiment", "run a scripted experiment");
    exp->add_option("name", experiment_name,
                    "absorbing_ball|steady_convergence|energy_enstrophy|backward_uniqueness|"
                    "turbulence|exact_family")
        ->required();
    exp->add_option("--config", config_path, "JSON run configuration")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "run several experiments, possibly in parallel");
    sweep_cmd->add_option("--config", config_path, "JSON sweep configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(config_path);
        if (verify->parsed()) return run_verify_exact(family, resolutions, t_check, dt);
        if (diag->parsed()) return run_diagnose(snapshot_path);
        if (exp->parsed()) return run_experiment(experiment_name, config_path);
        if (sweep_cmd->parsed()) return run_sweep(config_path);
    } catch (const sdb::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sdb::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
