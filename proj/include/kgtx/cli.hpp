#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kgtx/analysis.hpp"
#include "kgtx/nlsolver.hpp"
#include "kgtx/spectral.hpp"

namespace kgtx {

/// One `key = value` line as written, with its line number.
struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct RunConfig {
  double c = 0.0, a1 = 0.0, a2 = 0.0;
  std::string nonlinearity = "none";
  double lambda = 1.0;
  double bump_amplitude = 1.0, bump_center = 1.5, bump_width = 0.4;
  double h = 1.0 / 512;
  double L = 0.0;   // resolved: x0 + w + cT + 10h unless given
  double dt = 0.0;  // resolved: T / ceil(T c / (cfl h)) unless given
  double cfl = 0.5;
  double T = 1.0;
  std::vector<double> snapshots;  // resolved: 0, T/4, T/2, 3T/4, T unless given
  std::string mode = "leapfrog";  // leapfrog | conserving | spectral-linear
  double eps_rel = 1e-8;
  double delta = 0.0;  // resolved: 2h unless given
  double spectral_tolerance = 1e-7;
  double l2_tolerance = 1e-2;
  double energy_tolerance = 1e-3;
  double conserving_energy_tolerance = 1e-9;
  double norm_tolerance = 0.01;
  double outside_tolerance = 1e-6;
  double causality_cfl = 1.0;
  std::string output_dir = "kgtx_out";
  std::uint64_t seed = 0;
  int lipschitz_pairs = 100;
  bool allow_inadmissible = false;

  std::vector<SweepAxis> sweep;
  /// Every key as given, for the metadata echo and for sweep cells.
  std::map<std::string, ConfigEntry> entries;

  PhysicsParams physics() const;
  InitialDatum datum() const;
  NonlinearitySpec nonlinearity_spec() const;
  /// Uniform grid whose extent strictly exceeds L.
  BranchGrid grid() const;
  RunOptions run_options() const;
  Scheme scheme() const;
};

/// Canonical keys in documentation order.
const std::vector<std::string>& config_keys();

/// Parses and validates `key = value` text. Numbers accept a/b fractions.
/// Throws ConfigError carrying the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// The same configuration with `key` replaced (used for sweep cells).
/// Sweep axes are dropped.
RunConfig with_value(const RunConfig& cfg, const std::string& key, const std::string& value);

/// Every canonical key with its resolved value, in canonical order.
std::vector<std::pair<std::string, std::string>> resolved_echo(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = true;
  double value = 0.0;
  double threshold = 0.0;
};

struct CommandOutput {
  int exit_code = 0;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> files;
  /// Scalar summaries (energy at start and end, drift, peak amplitude).
  std::vector<std::pair<std::string, double>> stats;
};

CommandOutput cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out);
CommandOutput cmd_linear_spectral(const RunConfig& cfg, const std::filesystem::path& out);
CommandOutput cmd_verify(const RunConfig& cfg, const std::filesystem::path& out);
CommandOutput cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, int jobs = 1);

// Output helpers, exposed for tests.
std::string format_double(double v);
std::string sha256_hex(const std::filesystem::path& file);

}  // namespace kgtx
