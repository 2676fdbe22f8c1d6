// macksolve: base flows, admissibility scans, asymptotic mode locations and
// direct eigenvalue solves for the inviscid compressible pressure equation.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "macksolve/dispersion.hpp"
#include "macksolve/eigensolver.hpp"
#include "macksolve/io.hpp"
#include "macksolve/outer.hpp"
#include "macksolve/parallel.hpp"
#include "macksolve/rayleigh.hpp"

using namespace macksolve;

namespace {

struct RunConfig {
  std::string profile = "blasius";
  std::string flow_file;
  double ymax = 20.0;
  int n = 2000;
  double mach = 0.0;
  double gamma = kGamma;
  double cr = 0.0, cr_min = 0.0, cr_max = 0.0, step = 1e-3;
  double alpha = 0.0, alpha_min = 0.0, alpha_max = 60.0;
  double ci_seed = 1e-4;
  int sign_target = 1;
  double dump_alpha = 20.0, dump_ci = 1e-6;
  std::string out, in, dump_langer, dump_basis, dump_phi;
};

class Log {
 public:
  bool quiet = false, json = false;
  void info(const std::string& msg, const Json& extra = Json::object()) const {
    if (quiet) return;
    if (json) {
      Json j = extra;
      j["level"] = "info";
      j["msg"] = msg;
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << msg;
      if (!extra.empty()) std::cerr << " " << extra.dump();
      std::cerr << "\n";
    }
  }
  void error(const std::string& msg, int code) const {
    if (json)
      std::cerr << Json{{"level", "error"}, {"msg", msg}, {"exit", code}}.dump() << "\n";
    else
      std::cerr << "error: " << msg << "\n";
  }
};

// Files written so far; removed when a later step fails.
std::vector<std::string> g_written;

void emit(const std::string& path, const std::string& text) {
  write_atomic(path, text);
  g_written.push_back(path);
}

Json config_json(const RunConfig& c, const std::string& cmd) {
  Json j;
  j["command"] = cmd;
  if (cmd == "fields") {
    j["in"] = c.in;
    return j;
  }
  j["profile"] = c.profile;
  if (!c.flow_file.empty()) j["flow"] = c.flow_file;
  j["ymax"] = c.ymax;
  j["n"] = c.n;
  if (cmd != "baseflow" && cmd != "fields") {
    j["mach"] = c.mach;
    j["gamma"] = c.gamma;
  }
  if (cmd == "scan-j") {
    j["cr_min"] = c.cr_min;
    j["cr_max"] = c.cr_max;
    j["step"] = c.step;
  }
  if (cmd == "modes" || cmd == "eigen") j["cr"] = c.cr;
  if (cmd == "modes") {
    j["alpha_min"] = c.alpha_min;
    j["alpha_max"] = c.alpha_max;
    j["sign_target"] = c.sign_target;
  }
  if (cmd == "eigen") {
    j["alpha"] = c.alpha;
    j["ci_seed"] = c.ci_seed;
  }
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void validate(const RunConfig& c, const std::string& cmd) {
  require(c.profile == "blasius" || c.profile == "tanh" || c.profile == "table",
          "profile must be blasius, tanh or table");
  require(c.profile != "table" || !c.flow_file.empty(), "profile table requires --flow");
  require(c.ymax > 0.0, "ymax must be positive");
  require(c.n >= 4, "n must be at least 4");
  if (cmd == "baseflow" || cmd == "fields") return;
  require(c.mach > 1.0, "mach must exceed 1 (requires M_a > 1)");
  require(c.gamma > 1.0, "gamma must exceed 1");
  if (cmd == "scan-j") {
    require(c.cr_max > c.cr_min, "cr-max must exceed cr-min");
    require(c.step > 0.0 && c.step <= 1e-3, "step must lie in (0, 1e-3]");
    return;
  }
  require(in_mode_window(c.cr, c.mach), "cr must lie in the mode window (1 - 1/M_a, 1)");
  if (cmd == "modes") {
    require(c.alpha_max > c.alpha_min && c.alpha_min >= 0.0, "alpha range must be increasing and non-negative");
    require(c.sign_target == 1 || c.sign_target == -1, "sign-target must be +1 or -1");
    require(c.dump_alpha > 0.0, "dump-alpha must be positive");
    require(c.dump_ci > 0.0, "dump-ci must be positive");
  }
  if (cmd == "eigen") {
    require(c.alpha > 0.0, "alpha must be positive");
    require(c.ci_seed > 0.0, "ci-seed must be positive (c_i > 0)");
  }
}

BaseFlow make_flow(const RunConfig& c) {
  if (c.profile == "table") return baseflow_from_json(Json::parse(read_file(c.flow_file)));
  if (c.profile == "tanh") return tanh_profile(c.ymax, c.n);
  return blasius(c.ymax, c.n);
}

// Applies a JSON config file for one subcommand: keys map to flags; a flag
// given on the command line wins; unknown keys are rejected.
void apply_config_file(const std::string& path, CLI::App* sub, const std::map<std::string, std::string>& keys) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw DomainError("malformed config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto k = keys.find(it.key());
    if (k == keys.end()) throw DomainError("unknown config key '" + it.key() + "'");
    CLI::Option* opt = sub->get_option(k->second);
    if (opt->count() > 0) continue;
    std::string v = it->is_string() ? it->get<std::string>() : it->dump();
    opt->clear();
    opt->add_result(v);
    opt->run_callback();
  }
}

Json metadata(const RunConfig& c, const std::string& cmd) {
  Json cfg = config_json(c, cmd);
  Json m;
  m["generator"] = "macksolve";
  m["command"] = cmd;
  m["config_hash"] = config_hash(cfg);
  m["config"] = cfg;
  return m;
}

void dump_langer(const DispersionContext& ctx, double alpha, const std::string& path, const Json& meta) {
  LangerMap map = ctx.map(alpha);
  std::vector<std::vector<double>> rows;
  double top = ctx.mean().y_max();
  for (int k = 0; k <= 2000; ++k) {
    double y = top * k / 2000.0;
    EtaJet e = map.jet(y);
    rows.push_back({y, e.eta.real(), e.d1.real(), map.w0(y)});
  }
  Json m = meta;
  m["dump_alpha"] = alpha;
  emit(path, csv_text(m, {"Y", "eta", "deta", "w0"}, rows));
}

void dump_basis(const DispersionContext& ctx, double alpha, const std::string& path, const Json& meta) {
  LangerMap map = ctx.map(alpha);
  OuterBasis basis(map);
  std::vector<std::vector<double>> rows;
  double top = ctx.mean().y_max();
  for (int k = 0; k <= 2000; ++k) {
    double y = top * k / 2000.0;
    BasisPoint p = basis.eval(y);
    // Rows whose unscaled values leave the double range are left out.
    if (std::abs(p.log_scale) > 700.0) break;
    cd a = p.A(), b = p.B();
    rows.push_back({y, a.real(), a.imag(), b.real(), b.imag()});
  }
  Json m = meta;
  m["dump_alpha"] = alpha;
  emit(path, csv_text(m, {"Y", "A_re", "A_im", "B_re", "B_im"}, rows));
}

void dump_phi(const DispersionContext& ctx, double alpha, double ci, const std::string& path, const Json& meta) {
  cd c(ctx.cr(), ci);
  PhiSolution phi(ctx.mean(), ctx.turning(), ctx.window(), c, alpha);
  const CriticalWindow& w = ctx.window();
  std::vector<std::vector<double>> rows;
  for (int k = 0; k <= 1000; ++k) {
    double y = w.y1s + (w.y2s - w.y1s) * k / 1000.0;
    cd v = phi.phi(y);
    rows.push_back({y, v.real(), v.imag(), std::abs(phi.psi(y))});
  }
  Json m = meta;
  m["dump_alpha"] = alpha;
  m["dump_ci"] = ci;
  emit(path, csv_text(m, {"Y", "phi_re", "phi_im", "psi_abs"}, rows));
}

Json window_meta(const DispersionContext& ctx) {
  const CriticalWindow& w = ctx.window();
  const TurningData& td = ctx.turning();
  return {{"delta0", w.delta0}, {"y1s", w.y1s},        {"y2s", w.y2s}, {"y0", td.y0},
          {"yc", *td.yc},       {"w_y0", ctx.supersonic_weight()}};
}

int run_baseflow(const RunConfig& c, const Log& log) {
  BaseFlow flow = make_flow(c);
  Json j = baseflow_json(flow);
  j["metadata"] = metadata(c, "baseflow");
  j["metadata"]["wall_shear"] = flow.wall_shear;
  log.info("base flow ready", {{"kind", flow.kind_name()}, {"wall_shear", flow.wall_shear}});
  emit(c.out, j.dump(1) + "\n");
  return 0;
}

int run_scan_j(const RunConfig& c, const Log& log) {
  BaseFlow flow = make_flow(c);
  MeanFlow mean(flow, c.mach, c.gamma);
  std::vector<double> crs;
  long count = std::lround(std::floor((c.cr_max - c.cr_min) / c.step + 1e-9));
  for (long k = 0; k <= count; ++k) crs.push_back(c.cr_min + k * c.step);
  double lo = j_domain_min(mean), hi = j_domain_max(mean);
  for (double x : crs)
    require(x >= lo && x < hi, "cr range must lie in [sqrt(T0(0))/M_a, 1 + 1/M_a) = [" + num(lo) + ", " + num(hi) + ")");
  AdmissibleReport rep = admissible_set_scan(mean, crs, env_threads());
  Json meta = metadata(c, "scan-j");
  meta["noise_floor"] = rep.noise_floor;
  meta["quadrature"] = "adaptive Gauss-Kronrod, rel 1e-8 and 1e-10";
  Json iv = Json::array();
  for (auto [a, b] : rep.intervals) iv.push_back({a, b});
  meta["intervals"] = iv;
  std::vector<std::vector<double>> rows;
  for (const auto& s : rep.samples) rows.push_back({s.cr, s.in_domain ? s.j : std::nan(""), s.admissible ? 1.0 : 0.0});
  log.info("admissible intervals", {{"intervals", iv}});
  emit(c.out, csv_text(meta, {"c_r", "J", "admissible"}, rows));
  return 0;
}

int run_modes(const RunConfig& c, const Log& log) {
  BaseFlow flow = make_flow(c);
  MeanFlow mean(flow, c.mach, c.gamma);
  DispersionContext ctx(mean, c.cr);
  double amin = c.alpha_min > 0.0 ? c.alpha_min : ctx.alpha_min();
  require(amin >= ctx.alpha_min() - 1e-12,
          "alpha-min must be at least " + num(ctx.alpha_min()) + " (wall Airy argument below -2)");
  require(c.alpha_max > amin, "alpha-max must exceed alpha-min");
  Json meta = metadata(c, "modes");
  meta["window"] = window_meta(ctx);
  meta["alpha_cap"] = ctx.alpha_cap();
  meta["root_tolerance"] = 1e-8;
  meta["outer_rel_tol"] = 1e-10;

  std::vector<DispersionRoot> roots = real_dispersion_roots(ctx, amin, c.alpha_max, env_threads());
  std::vector<std::size_t> sel = select_unstable_subsequence(roots, c.sign_target);
  std::vector<bool> is_sel(roots.size(), false);
  for (std::size_t i : sel) is_sel[i] = true;
  double spacing = kPi / ctx.supersonic_weight();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < roots.size(); ++i)
    rows.push_back({static_cast<double>(i + 1), roots[i].alpha, is_sel[i] ? 1.0 : 0.0, roots[i].theta, spacing});
  log.info("dispersion roots", {{"count", roots.size()}, {"selected", sel.size()}});

  if (!c.dump_langer.empty()) dump_langer(ctx, c.dump_alpha, c.dump_langer, meta);
  if (!c.dump_basis.empty()) dump_basis(ctx, c.dump_alpha, c.dump_basis, meta);
  if (!c.dump_phi.empty()) dump_phi(ctx, c.dump_alpha, c.dump_ci, c.dump_phi, meta);
  emit(c.out, csv_text(meta, {"k", "alpha_k", "selected", "theta_phase", "predicted_spacing"}, rows));
  return 0;
}

int run_eigen(const RunConfig& c, const Log& log) {
  BaseFlow flow = make_flow(c);
  MeanFlow mean(flow, c.mach, c.gamma);
  TurningData td = turning_point(mean, c.cr);
  Mode m = find_eigenvalue(mean, c.alpha, cd(c.cr, c.ci_seed));
  Json j = mode_json(m);
  Json meta = metadata(c, "eigen");
  meta["turning"] = {{"y0", td.y0}, {"yc", *td.yc}, {"u0", td.u0}, {"dfr0", td.dfr0}};
  meta["shoot"] = {{"y_start", m.shot.y_start}, {"rtol", ShootOptions{}.rtol}, {"h_out", ShootOptions{}.h_out}};
  j["metadata"] = meta;
  log.info("mode converged", {{"c", {m.c.real(), m.c.imag()}}, {"iterations", m.iterations},
                              {"boundary_residual", m.boundary_residual}});
  emit(c.out, j.dump(1) + "\n");
  return 0;
}

int run_fields(const RunConfig& c, const Log& log) {
  Json j;
  try {
    j = Json::parse(read_file(c.in));
  } catch (const Json::exception& e) {
    throw DomainError("malformed mode file " + c.in + ": " + e.what());
  }
  ModeRecord rec = mode_from_json(j);
  if (!rec.metadata.contains("config")) throw DomainError("mode file lacks the metadata needed to rebuild the flow");
  const Json& cfg = rec.metadata["config"];
  RunConfig fc = c;
  fc.profile = cfg.value("profile", std::string("blasius"));
  fc.flow_file = cfg.value("flow", std::string());
  fc.ymax = cfg.value("ymax", 20.0);
  fc.n = cfg.value("n", 2000);
  fc.mach = cfg.at("mach").get<double>();
  fc.gamma = cfg.value("gamma", kGamma);
  require(fc.mach > 1.0, "mode file: mach must exceed 1 (requires M_a > 1)");
  BaseFlow flow = make_flow(fc);
  MeanFlow mean(flow, fc.mach, fc.gamma);
  ShootOptions so;
  so.y_start = rec.metadata.at("shoot").at("y_start").get<double>();
  ShootResult s = shoot_pressure(mean, rec.alpha, rec.c, so);
  if (s.p.size() != rec.p.size()) throw NumericalError("fields: re-shot profile does not match the stored grid");
  double diff = 0.0;
  for (std::size_t k = 0; k < s.p.size(); ++k) diff = std::max(diff, std::abs(s.p[k] - rec.p[k]));
  if (diff > 1e-6) throw NumericalError("fields: re-shot profile differs from the stored one by " + num(diff));
  FieldTables f = reconstruct_fields(mean, rec.alpha, rec.c, s.y, s.p, s.dp);
  Residuals r = residual_check(f, mean, rec.alpha, rec.c);
  Json meta = metadata(c, "fields");
  meta["mode_config_hash"] = rec.metadata.value("config_hash", std::string());
  meta["alpha"] = rec.alpha;
  meta["c"] = {rec.c.real(), rec.c.imag()};
  meta["residuals"] = {{"continuity", r.continuity}, {"momentum_x", r.momentum_x}, {"momentum_y", r.momentum_y},
                       {"energy", r.energy},         {"state", r.state},           {"guard", r.guard}};
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < f.y.size(); ++k)
    rows.push_back({f.y[k], f.p[k].real(), f.p[k].imag(), f.rho[k].real(), f.rho[k].imag(), f.u[k].real(),
                    f.u[k].imag(), f.v[k].real(), f.v[k].imag(), f.t[k].real(), f.t[k].imag()});
  log.info("fields rebuilt", {{"max_residual", r.max()}});
  emit(c.out, csv_text(meta, {"Y", "P_re", "P_im", "rho_re", "rho_im", "U_re", "U_im", "V_re", "V_im", "T_re", "T_im"},
                       rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersonic boundary-layer mode solver"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  Log log;
  std::string config_path;
  app.add_flag("--quiet", log.quiet, "Suppress log output");
  app.add_flag("--json-log", log.json, "Log as JSON lines on stderr");

  std::map<std::string, std::map<std::string, std::string>> keys;
  auto flow_opts = [&](CLI::App* s, std::map<std::string, std::string>& k) {
    s->add_option("--profile", cfg.profile, "blasius, tanh or table");
    s->add_option("--flow", cfg.flow_file, "Base-flow JSON for --profile table");
    s->add_option("--ymax", cfg.ymax, "Domain height");
    s->add_option("--n", cfg.n, "Grid nodes");
    s->add_option("--config", config_path, "JSON config file (flags take precedence)");
    k["profile"] = "--profile";
    k["flow"] = "--flow";
    k["ymax"] = "--ymax";
    k["n"] = "--n";
  };
  auto mach_opts = [&](CLI::App* s, std::map<std::string, std::string>& k) {
    s->add_option("--mach", cfg.mach, "Free-stream Mach number");
    s->add_option("--gamma", cfg.gamma, "Ratio of specific heats");
    k["mach"] = "--mach";
    k["gamma"] = "--gamma";
  };

  CLI::App* bf = app.add_subcommand("baseflow", "Compute and export a base flow");
  flow_opts(bf, keys["baseflow"]);
  bf->add_option("--out", cfg.out, "Output JSON")->required();
  keys["baseflow"]["out"] = "--out";

  CLI::App* sj = app.add_subcommand("scan-j", "Scan the admissibility integral J over c_r");
  flow_opts(sj, keys["scan-j"]);
  mach_opts(sj, keys["scan-j"]);
  sj->add_option("--cr-min", cfg.cr_min, "First c_r");
  sj->add_option("--cr-max", cfg.cr_max, "Last c_r");
  sj->add_option("--step", cfg.step, "c_r step (<= 1e-3)");
  sj->add_option("--out", cfg.out, "Output CSV")->required();
  for (auto [k, f] : std::map<std::string, std::string>{
           {"cr_min", "--cr-min"}, {"cr_max", "--cr-max"}, {"step", "--step"}, {"out", "--out"}})
    keys["scan-j"][k] = f;

  CLI::App* md = app.add_subcommand("modes", "Real dispersion roots and the selected subsequence");
  flow_opts(md, keys["modes"]);
  mach_opts(md, keys["modes"]);
  md->add_option("--cr", cfg.cr, "Phase speed c_r");
  md->add_option("--alpha-min", cfg.alpha_min, "Lower wave number (default: wall Airy argument -2)");
  md->add_option("--alpha-max", cfg.alpha_max, "Upper wave number");
  md->add_option("--sign-target", cfg.sign_target, "Sign of cos(Theta) kept in the selection");
  md->add_option("--dump-langer", cfg.dump_langer, "CSV of (Y, eta, eta', w0)");
  md->add_option("--dump-basis", cfg.dump_basis, "CSV of (Y, A, B)");
  md->add_option("--dump-phi", cfg.dump_phi, "CSV of (Y, phi, |psi|) on the critical window");
  md->add_option("--dump-alpha", cfg.dump_alpha, "Wave number used by the dumps");
  md->add_option("--dump-ci", cfg.dump_ci, "c_i used by --dump-phi");
  md->add_option("--out", cfg.out, "Output CSV")->required();
  for (auto [k, f] : std::map<std::string, std::string>{{"cr", "--cr"},
                                                        {"alpha_min", "--alpha-min"},
                                                        {"alpha_max", "--alpha-max"},
                                                        {"sign_target", "--sign-target"},
                                                        {"dump_langer", "--dump-langer"},
                                                        {"dump_basis", "--dump-basis"},
                                                        {"dump_phi", "--dump-phi"},
                                                        {"dump_alpha", "--dump-alpha"},
                                                        {"dump_ci", "--dump-ci"},
                                                        {"out", "--out"}})
    keys["modes"][k] = f;

  CLI::App* eg = app.add_subcommand("eigen", "Direct eigenvalue solve by complex shooting");
  flow_opts(eg, keys["eigen"]);
  mach_opts(eg, keys["eigen"]);
  eg->add_option("--cr", cfg.cr, "Phase speed of the seed");
  eg->add_option("--alpha", cfg.alpha, "Wave number");
  eg->add_option("--ci-seed", cfg.ci_seed, "Imaginary part of the seed");
  eg->add_option("--out", cfg.out, "Output mode JSON")->required();
  for (auto [k, f] : std::map<std::string, std::string>{
           {"cr", "--cr"}, {"alpha", "--alpha"}, {"ci_seed", "--ci-seed"}, {"out", "--out"}})
    keys["eigen"][k] = f;

  CLI::App* fl = app.add_subcommand("fields", "Rebuild (rho, U, V, T) from a mode file");
  fl->add_option("--in", cfg.in, "Mode JSON")->required();
  fl->add_option("--out", cfg.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string cmd;
  CLI::App* sub = nullptr;
  for (CLI::App* s : {bf, sj, md, eg, fl})
    if (s->parsed()) {
      cmd = s->get_name();
      sub = s;
    }

  try {
    if (!config_path.empty()) apply_config_file(config_path, sub, keys[cmd]);
    validate(cfg, cmd);
    log.info("resolved config", config_json(cfg, cmd));
    if (cmd == "baseflow") return run_baseflow(cfg, log);
    if (cmd == "scan-j") return run_scan_j(cfg, log);
    if (cmd == "modes") return run_modes(cfg, log);
    if (cmd == "eigen") return run_eigen(cfg, log);
    return run_fields(cfg, log);
  } catch (const DomainError& e) {
    log.error(e.what(), 2);
  } catch (const NumericalError& e) {
    log.error(e.what(), 3);
    for (const auto& p : g_written) std::filesystem::remove(p);
    return 3;
  } catch (const std::exception& e) {
    log.error(e.what(), 2);
  }
  for (const auto& p : g_written) std::filesystem::remove(p);
  return 2;
}
