#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdb/diagnostics.hpp"
#include "sdb/dynamics.hpp"
#include "sdb/params.hpp"

namespace sdb::io {

/// Parsed and validated run configuration.  Unknown keys anywhere in the
/// document are rejected: a silent typo in nu or g would invalidate every
/// quantitative check downstream.
struct RunConfig {
    int n = 64;
    double box_len = 2.0 * 3.14159265358979323846;
    double nu = 0.1;
    double g = 1.0;

    // initial data
    std::string initial_kind = "random";  // exact-family | random | snapshot
    std::string family = "plane_wave";    // vertical | horizontal | plane_wave | eigen_steady
    int u_mode = 1;
    double u_amplitude = 1.0;
    int theta_mode = 1;
    double theta_amplitude = 1.0;
    int wave_k1 = 1;  // plane-wave direction (k1, -k1)
    int n_mode = 1;   // eigen_steady
    std::uint64_t seed = 1;
    double u_norm = 1.0;
    double theta_norm = 1.0;
    double k_peak = 3.0;
    std::string snapshot_path;

    StepperConfig stepper;

    std::string out_dir = "out";
    long snapshot_every = 0;  // 0 = only final
    std::vector<std::string> diagnostics = {"all"};

    PhysParams params() const { return PhysParams{nu, g, box_len}; }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON echo of a configuration (defaults filled in, keys in fixed
/// order); a config round-trips bit-exactly through this form.
std::string canonical_json(const RunConfig& cfg);

/// Builds the initial state described by the config.
SimState build_initial_state(const RunConfig& cfg, GridPtr grid);

/// Snapshot format "SDB1": magic, then little-endian u32 n, f64 L, nu, g, t,
/// then three row-major n x n f64 physical arrays (u1, u2, theta).
void write_snapshot(const SimState& state, const PhysParams& params, const std::string& path);

struct Snapshot {
    SimState state;
    PhysParams params;
};
/// Reads a snapshot, re-derives the spectral form and enforces the field
/// invariants; mean or solenoidality drift beyond 1e-8 signals corruption.
Snapshot read_snapshot(const std::string& path);

/// CSV with a fixed header and 17 significant digits, LF line endings.
extern const char* const kDiagnosticsHeader;
std::string diagnostics_row(const diag::DiagRecord& r);
void write_diagnostics(const std::vector<diag::DiagRecord>& records, const std::string& path);

/// %.17g formatting used everywhere numbers are serialized.
std::string format_double(double x);

}  // namespace sdb::io
