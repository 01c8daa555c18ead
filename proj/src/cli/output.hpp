#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kgtx/cli.hpp"

namespace kgtx::out {

namespace fs = std::filesystem;

void write_text(const fs::path& p, const std::string& text);

void write_fields(const fs::path& p, const std::vector<Snapshot>& snaps);
void write_energy(const fs::path& p, const std::vector<EnergyReport>& rows);
void write_coefficients(const fs::path& p, const PhysicsParams& params,
                        const std::vector<double>& omegas);
void write_checks(const fs::path& p, const std::vector<CheckResult>& checks);

struct Metadata {
  std::string command;
  const RunConfig* config = nullptr;
  std::vector<CheckResult> checks;
  bool override_used = false;
  std::vector<fs::path> files;  // hashed and listed, relative to the metadata directory
};

/// metadata.json: deterministic (no clocks), so that identical runs produce
/// identical bytes. Wall-clock timings go to timings.json.
void write_metadata(const fs::path& dir, const Metadata& m);
void write_timings(const fs::path& dir, const std::vector<std::pair<std::string, double>>& t);

}  // namespace kgtx::out
