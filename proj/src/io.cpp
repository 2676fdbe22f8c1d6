#include "macksolve/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace macksolve {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DomainError("write failed for " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DomainError("cannot move output into place: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_text(const Json& meta, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (auto it = meta.begin(); it != meta.end(); ++it)
    s += "# " + it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  s += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ",";
      s += num(r[i]);
    }
    s += "\n";
  }
  return s;
}

Json baseflow_json(const BaseFlow& flow) {
  Json j;
  j["kind"] = flow.kind_name();
  j["grid"] = flow.grid;
  j["u"] = flow.u;
  j["du"] = flow.du;
  j["d2u"] = flow.d2u;
  j["d3u"] = flow.d3u;
  j["decay_rate"] = flow.decay_rate;
  return j;
}

BaseFlow baseflow_from_json(const Json& j) {
  try {
    BaseFlow f = table_profile(j.at("grid").get<std::vector<double>>(), j.at("u").get<std::vector<double>>(),
                               j.at("du").get<std::vector<double>>(), j.at("d2u").get<std::vector<double>>(),
                               j.at("d3u").get<std::vector<double>>());
    if (j.contains("decay_rate")) f.decay_rate = j.at("decay_rate").get<double>();
    return f;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed base-flow JSON: ") + e.what());
  }
}

Json mode_json(const Mode& mode) {
  Json j;
  j["alpha"] = mode.alpha;
  j["c"] = {mode.c.real(), mode.c.imag()};
  j["boundary_residual"] = mode.boundary_residual;
  j["iterations"] = mode.iterations;
  std::vector<double> pr, pi;
  for (const cd& p : mode.shot.p) {
    pr.push_back(p.real());
    pi.push_back(p.imag());
  }
  j["profile"] = {{"Y", mode.shot.y}, {"P_re", pr}, {"P_im", pi}};
  const Residuals& r = mode.residuals;
  j["residuals"] = {{"continuity", r.continuity}, {"momentum_x", r.momentum_x}, {"momentum_y", r.momentum_y},
                    {"energy", r.energy},         {"state", r.state},           {"guard", r.guard}};
  return j;
}

ModeRecord mode_from_json(const Json& j) {
  try {
    ModeRecord m;
    m.alpha = j.at("alpha").get<double>();
    auto c = j.at("c").get<std::vector<double>>();
    if (c.size() != 2) throw DomainError("mode JSON: c must be [re, im]");
    m.c = cd(c[0], c[1]);
    m.boundary_residual = j.value("boundary_residual", 0.0);
    const Json& p = j.at("profile");
    m.y = p.at("Y").get<std::vector<double>>();
    auto pr = p.at("P_re").get<std::vector<double>>();
    auto pi = p.at("P_im").get<std::vector<double>>();
    if (pr.size() != m.y.size() || pi.size() != m.y.size()) throw DomainError("mode JSON: profile sizes differ");
    for (std::size_t k = 0; k < pr.size(); ++k) m.p.emplace_back(pr[k], pi[k]);
    if (j.contains("metadata")) m.metadata = j.at("metadata");
    return m;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed mode JSON: ") + e.what());
  }
}

}  // namespace macksolve
