#include "output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <json.hpp>
#include <sstream>

namespace kgtx {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + file.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw NumericalError("SHA-256 initialisation failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

namespace out {

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << text;
  if (!f) throw ConfigError("write failed for " + p.string());
}

void write_fields(const fs::path& p, const std::vector<Snapshot>& snaps) {
  std::string s = "t,X,u\n";
  for (const Snapshot& sn : snaps) {
    const BranchField& f = sn.field;
    const std::size_t n = f.grid.n();
    const std::string t = format_double(sn.t) + ",";
    // X ascending; the node appears once.
    for (std::size_t i = n - 1; i >= 1; --i)
      s += t + format_double(BranchGrid::global(2, f.grid.x(i))) + "," + format_double(f.u2[i]) + "\n";
    for (std::size_t i = 0; i < n; ++i)
      s += t + format_double(f.grid.x(i)) + "," + format_double(f.u1[i]) + "\n";
  }
  write_text(p, s);
}

void write_energy(const fs::path& p, const std::vector<EnergyReport>& rows) {
  std::string s = "t,E,kinetic,elastic,dispersive,nonlinear\n";
  for (const EnergyReport& e : rows) {
    s += format_double(e.t) + "," + format_double(e.total) + "," + format_double(e.kinetic) + "," +
         format_double(e.elastic) + "," + format_double(e.dispersive) + "," +
         format_double(e.nonlinear) + "\n";
  }
  write_text(p, s);
}

void write_coefficients(const fs::path& p, const PhysicsParams& params,
                        const std::vector<double>& omegas) {
  std::string s = "omega,re_CR,im_CR,re_T,im_T\n";
  for (double w : omegas) {
    const Complex r = reflection_coeff(w, params);
    const Complex t = transmission_coeff(w, params);
    s += format_double(w) + "," + format_double(r.real()) + "," + format_double(r.imag()) + "," +
         format_double(t.real()) + "," + format_double(t.imag()) + "\n";
  }
  write_text(p, s);
}

void write_checks(const fs::path& p, const std::vector<CheckResult>& checks) {
  std::string s = "check,pass,value,threshold\n";
  for (const CheckResult& c : checks)
    s += c.name + "," + (c.pass ? "pass" : "fail") + "," + format_double(c.value) + "," +
         format_double(c.threshold) + "\n";
  write_text(p, s);
}

void write_metadata(const fs::path& dir, const Metadata& m) {
  nlohmann::ordered_json j;
  j["artifact"] = "kgtx";
  j["version"] = KGTX_VERSION;
  j["command"] = m.command;
  if (m.config) {
    j["seed"] = m.config->seed;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : resolved_echo(*m.config)) cfg[k] = v;
    j["config"] = cfg;
  }
  j["override_used"] = m.override_used;
  bool all = true;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const CheckResult& c : m.checks) {
    all = all && c.pass;
    reports.push_back({{"name", c.name}, {"pass", c.pass}, {"value", format_double(c.value)},
                       {"threshold", format_double(c.threshold)}});
  }
  j["reports"] = reports;
  j["pass"] = all;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const fs::path& f : m.files) {
    const fs::path full = dir / f;
    files.push_back({{"name", f.generic_string()},
                     {"bytes", static_cast<std::uint64_t>(fs::file_size(full))},
                     {"sha256", sha256_hex(full)}});
  }
  j["files"] = files;
  write_text(dir / "metadata.json", j.dump(2) + "\n");
}

void write_timings(const fs::path& dir, const std::vector<std::pair<std::string, double>>& t) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t) j[k] = v;
  write_text(dir / "timings.json", j.dump(2) + "\n");
}

}  // namespace out
}  // namespace kgtx
