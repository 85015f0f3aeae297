#include "sdb/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sdb/exact_solutions.hpp"
#include "sdb/random_fields.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace sdb::io {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ParseError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError("bad value for key '" + std::string(key) + "': " + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config root must be a JSON object");
    reject_unknown_keys(doc, {"grid", "physics", "initial", "stepper", "outputs"}, "config root");

    RunConfig cfg;

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        reject_unknown_keys(g, {"n", "L"}, "grid");
        cfg.n = get_or<int>(g, "n", cfg.n);
        cfg.box_len = get_or<double>(g, "L", cfg.box_len);
    }
    if (doc.contains("physics")) {
        const json& p = doc.at("physics");
        reject_unknown_keys(p, {"nu", "g"}, "physics");
        cfg.nu = get_or<double>(p, "nu", cfg.nu);
        cfg.g = get_or<double>(p, "g", cfg.g);
    }
    if (doc.contains("initial")) {
        const json& ini = doc.at("initial");
        reject_unknown_keys(ini,
                            {"kind", "family", "u_mode", "u_amplitude", "theta_mode",
                             "theta_amplitude", "wave_k1", "n_mode", "seed", "u_norm",
                             "theta_norm", "k_peak", "path"},
                            "initial");
        cfg.initial_kind = get_or<std::string>(ini, "kind", cfg.initial_kind);
        cfg.family = get_or<std::string>(ini, "family", cfg.family);
        cfg.u_mode = get_or<int>(ini, "u_mode", cfg.u_mode);
        cfg.u_amplitude = get_or<double>(ini, "u_amplitude", cfg.u_amplitude);
        cfg.theta_mode = get_or<int>(ini, "theta_mode", cfg.theta_mode);
        cfg.theta_amplitude = get_or<double>(ini, "theta_amplitude", cfg.theta_amplitude);
        cfg.wave_k1 = get_or<int>(ini, "wave_k1", cfg.wave_k1);
        cfg.n_mode = get_or<int>(ini, "n_mode", cfg.n_mode);
        cfg.seed = get_or<std::uint64_t>(ini, "seed", cfg.seed);
        cfg.u_norm = get_or<double>(ini, "u_norm", cfg.u_norm);
        cfg.theta_norm = get_or<double>(ini, "theta_norm", cfg.theta_norm);
        cfg.k_peak = get_or<double>(ini, "k_peak", cfg.k_peak);
        cfg.snapshot_path = get_or<std::string>(ini, "path", cfg.snapshot_path);
    }
    if (doc.contains("stepper")) {
        const json& st = doc.at("stepper");
        reject_unknown_keys(st, {"dt", "cfl_safety", "adaptive", "t_end", "sample_every"},
                            "stepper");
        cfg.stepper.dt = get_or<double>(st, "dt", cfg.stepper.dt);
        cfg.stepper.cfl_safety = get_or<double>(st, "cfl_safety", cfg.stepper.cfl_safety);
        cfg.stepper.adaptive = get_or<bool>(st, "adaptive", cfg.stepper.adaptive);
        cfg.stepper.t_end = get_or<double>(st, "t_end", cfg.stepper.t_end);
        cfg.stepper.sample_every = get_or<int>(st, "sample_every", cfg.stepper.sample_every);
    }
    if (doc.contains("outputs")) {
        const json& out = doc.at("outputs");
        reject_unknown_keys(out, {"dir", "snapshot_every", "diagnostics"}, "outputs");
        cfg.out_dir = get_or<std::string>(out, "dir", cfg.out_dir);
        cfg.snapshot_every = get_or<long>(out, "snapshot_every", cfg.snapshot_every);
        cfg.diagnostics = get_or<std::vector<std::string>>(out, "diagnostics", cfg.diagnostics);
    }

    // validation: surface the violated invariant by name
    if (cfg.n < 6 || cfg.n % 2 != 0) throw ValidationError("n must be even and >= 6");
    if (!(cfg.box_len > 0.0)) throw ValidationError("L must be positive");
    cfg.params().validate();
    cfg.stepper.validate();
    const std::set<std::string> kinds = {"exact-family", "random", "snapshot"};
    if (!kinds.count(cfg.initial_kind)) {
        throw ValidationError("initial.kind must be exact-family, random, or snapshot");
    }
    const std::set<std::string> families = {"vertical", "horizontal", "plane_wave", "eigen_steady"};
    if (cfg.initial_kind == "exact-family" && !families.count(cfg.family)) {
        throw ValidationError("initial.family must be one of vertical, horizontal, plane_wave, "
                              "eigen_steady");
    }
    if (cfg.initial_kind == "snapshot") {
        std::ifstream probe(cfg.snapshot_path, std::ios::binary);
        if (!probe.good()) {
            throw ValidationError("initial.path does not exist: " + cfg.snapshot_path);
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string canonical_json(const RunConfig& cfg) {
    json doc;
    doc["grid"] = {{"n", cfg.n}, {"L", cfg.box_len}};
    doc["physics"] = {{"nu", cfg.nu}, {"g", cfg.g}};
    json ini;
    ini["kind"] = cfg.initial_kind;
    if (cfg.initial_kind == "exact-family") {
        ini["family"] = cfg.family;
        ini["u_mode"] = cfg.u_mode;
        ini["u_amplitude"] = cfg.u_amplitude;
        ini["theta_mode"] = cfg.theta_mode;
        ini["theta_amplitude"] = cfg.theta_amplitude;
        ini["wave_k1"] = cfg.wave_k1;
        ini["n_mode"] = cfg.n_mode;
    } else if (cfg.initial_kind == "random") {
        ini["seed"] = cfg.seed;
        ini["u_norm"] = cfg.u_norm;
        ini["theta_norm"] = cfg.theta_norm;
        ini["k_peak"] = cfg.k_peak;
    } else {
        ini["path"] = cfg.snapshot_path;
    }
    doc["initial"] = ini;
    doc["stepper"] = {{"dt", cfg.stepper.dt},
                      {"cfl_safety", cfg.stepper.cfl_safety},
                      {"adaptive", cfg.stepper.adaptive},
                      {"t_end", cfg.stepper.t_end},
                      {"sample_every", cfg.stepper.sample_every}};
    doc["outputs"] = {{"dir", cfg.out_dir},
                      {"snapshot_every", cfg.snapshot_every},
                      {"diagnostics", cfg.diagnostics}};
    return doc.dump(2);
}

SimState build_initial_state(const RunConfig& cfg, GridPtr grid) {
    const PhysParams params = cfg.params();
    using namespace sdb::exact;
    if (cfg.initial_kind == "random") {
        SpectralVector u = random_velocity(grid, cfg.seed, cfg.u_norm, cfg.k_peak);
        SpectralScalar theta = random_scalar(grid, cfg.seed + 0x9e3779b97f4a7c15ull,
                                             cfg.theta_norm, cfg.k_peak);
        return SimState(std::move(u), std::move(theta));
    }
    if (cfg.initial_kind == "snapshot") {
        return read_snapshot(cfg.snapshot_path).state;
    }
    if (cfg.family == "vertical") {
        auto aV = Profile1D::sine(ProfileAxis::X2, cfg.u_mode, cfg.u_amplitude);
        auto thetaV = Profile1D::cosine(ProfileAxis::X2, cfg.theta_mode, cfg.theta_amplitude);
        ExactState s = vertical_solution(aV, thetaV, grid, params, 0.0);
        return SimState(std::move(s.u), std::move(s.theta));
    }
    if (cfg.family == "horizontal") {
        auto aH = Profile1D::sine(ProfileAxis::X1, cfg.u_mode, cfg.u_amplitude);
        auto thetaH = Profile1D::cosine(ProfileAxis::X1, cfg.theta_mode, cfg.theta_amplitude);
        ExactState s = horizontal_solution(aH, thetaH, grid, params, 0.0);
        return SimState(std::move(s.u), std::move(s.theta));
    }
    if (cfg.family == "plane_wave") {
        WaveVector k(cfg.wave_k1, -cfg.wave_k1);
        auto h = Profile1D::cosine(ProfileAxis::Z, cfg.theta_mode, cfg.theta_amplitude);
        auto f0 = Profile1D::sine(ProfileAxis::Z, cfg.u_mode, cfg.u_amplitude);
        ExactState s = plane_wave_solution(h, k, f0, grid, params, 0.0);
        return SimState(std::move(s.u), std::move(s.theta));
    }
    EigenSteadyState s = eigen_steady_state(cfg.n_mode, cfg.u_amplitude, grid, params);
    return SimState(std::move(s.u), std::move(s.theta));
}

namespace {

void write_f64(std::ofstream& out, double x) {
    out.write(reinterpret_cast<const char*>(&x), sizeof(x));
}

void write_array(std::ofstream& out, const std::vector<double>& a) {
    out.write(reinterpret_cast<const char*>(a.data()),
              static_cast<std::streamsize>(a.size() * sizeof(double)));
}

double read_f64(std::ifstream& in) {
    double x;
    in.read(reinterpret_cast<char*>(&x), sizeof(x));
    if (!in.good()) throw TruncatedFileError("snapshot ends mid-field");
    return x;
}

}  // namespace

void write_snapshot(const SimState& state, const PhysParams& params, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw IoError("cannot open snapshot for writing: " + path);
    out.write("SDB1", 4);
    const std::uint32_t n = static_cast<std::uint32_t>(state.u.grid().n());
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    write_f64(out, state.u.grid().box_len());
    write_f64(out, params.nu);
    write_f64(out, params.g);
    write_f64(out, state.t);
    write_array(out, state.u.x().to_physical());
    write_array(out, state.u.y().to_physical());
    write_array(out, state.theta.to_physical());
    if (!out.good()) throw IoError("write failure on snapshot: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw IoError("cannot open snapshot: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in.good() || std::memcmp(magic, "SDB1", 4) != 0) {
        throw BadMagicError("not a snapshot file: " + path);
    }
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in.good()) throw TruncatedFileError("snapshot header truncated");
    const double L = read_f64(in);
    const double nu = read_f64(in);
    const double g = read_f64(in);
    const double t = read_f64(in);

    if (n < 6 || n % 2 != 0) throw InvariantViolationError("snapshot grid size is invalid");
    GridPtr grid = make_grid(static_cast<int>(n), L);

    auto read_array = [&](const char* what) {
        std::vector<double> a(grid->size());
        in.read(reinterpret_cast<char*>(a.data()),
                static_cast<std::streamsize>(a.size() * sizeof(double)));
        if (!in.good()) {
            throw TruncatedFileError(std::string("snapshot truncated in ") + what);
        }
        return a;
    };
    std::vector<double> u1 = read_array("u1");
    std::vector<double> u2 = read_array("u2");
    std::vector<double> th = read_array("theta");

    auto from_physical_checked = [&](std::vector<double>& a, const char* what) {
        // means are checked against the snapshot integrity threshold, not the
        // in-memory invariant threshold
        double mean = 0.0;
        for (double v : a) mean += v;
        mean /= static_cast<double>(a.size());
        if (std::abs(mean) > 1e-8) {
            throw InvariantViolationError(std::string(what) + " mean " + std::to_string(mean) +
                                          " exceeds 1e-8; snapshot is corrupt");
        }
        for (double& v : a) v -= mean;
        return SpectralScalar::from_physical(grid, a);
    };
    SpectralVector u(from_physical_checked(u1, "u1"), from_physical_checked(u2, "u2"));
    SpectralScalar theta = from_physical_checked(th, "theta");
    if (u.solenoidal_residual() > 1e-8) {
        throw InvariantViolationError("snapshot velocity is not solenoidal within 1e-8");
    }
    PhysParams params{nu, g, L};
    params.validate();
    return Snapshot{SimState(std::move(u), std::move(theta), t), params};
}

const char* const kDiagnosticsHeader =
    "t,energy,enstrophy,theta_l2,theta_l1,theta_l4,theta_linf,g_sigma,chi,lambda,"
    "mean_u1,mean_u2,mean_theta,in_lambda_region,cfl";

std::string diagnostics_row(const diag::DiagRecord& r) {
    std::string row;
    row.reserve(400);
    auto add = [&](double x) {
        row += format_double(x);
        row += ',';
    };
    add(r.t);
    add(r.energy);
    add(r.enstrophy);
    add(r.theta_l2);
    add(r.theta_l1);
    add(r.theta_l4);
    add(r.theta_linf);
    add(r.g_sigma);
    add(r.chi);
    add(r.lambda);
    add(r.mean_u1);
    add(r.mean_u2);
    add(r.mean_theta);
    row += r.in_lambda_region ? "1," : "0,";
    row += format_double(r.cfl);
    return row;
}

void write_diagnostics(const std::vector<diag::DiagRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);  // binary: LF endings everywhere
    if (!out.good()) throw IoError("cannot open diagnostics file: " + path);
    out << kDiagnosticsHeader << '\n';
    for (const auto& r : records) out << diagnostics_row(r) << '\n';
    if (!out.good()) throw IoError("write failure on diagnostics file: " + path);
}

}  // namespace sdb::io
