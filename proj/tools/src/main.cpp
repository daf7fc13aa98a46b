// sll: command-line driver for solves, sweeps, diagnostics and reference oracles.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "sll/dump.hpp"
#include "sll/errors.hpp"
#include "sll/limits.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sll;

namespace {

enum Exit { kOk = 0, kConfig = 1, kSonic = 2, kSolver = 3 };

struct Globals {
  std::string output_dir;
  unsigned jobs = 1;
};

fs::path output_dir(const Globals& g, const cli::RunConfig* cfg) {
  fs::path dir = ".";
  if (cfg && cfg->output_dir) dir = *cfg->output_dir;
  if (const char* env = std::getenv("SLL_OUTPUT_DIR"); env && *env) dir = env;
  if (!g.output_dir.empty()) dir = g.output_dir;
  fs::create_directories(dir);
  return dir;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json to_json(const AdmissibilityReport& r) {
  return {{"inf_B", r.inf_B},
          {"inf_S", nullable(r.inf_S)},
          {"positive", r.positive},
          {"b_min_unbounded", r.b_min_unbounded},
          {"slope_lower", r.slope_lower},
          {"slope_upper", r.slope_upper},
          {"dB_axis", r.dB_axis},
          {"dS_axis", r.dS_axis},
          {"sign_conditions", r.sign_conditions},
          {"notes", r.notes}};
}

json to_json(const DiagnosticsBundle& d) {
  json j = {{"weak_residuals",
             {{"mass", d.weak.mass},
              {"momentum1", d.weak.momentum1},
              {"momentum2", d.weak.momentum2},
              {"energy", d.weak.energy ? json(*d.weak.energy) : json(nullptr)}}},
            {"curlTV", d.curl_tv},
            {"bounds",
             {{"maxMach", d.bounds.max_mach},
              {"sup_B", d.bounds.sup_B},
              {"inf_B", d.bounds.inf_B},
              {"sup_S", nullable(d.bounds.sup_S)},
              {"inf_S", nullable(d.bounds.inf_S)}}},
            {"boundaryDefect", {{"lower", d.trace.lower}, {"upper", d.trace.upper}}},
            {"bernoulliDefect", d.bernoulli_defect},
            {"b_min_unbounded", d.b_min_unbounded}};
  if (d.concentration) {
    j["pairingStat"] = d.concentration->pairing_stat;
    j["speedVariance"] = d.concentration->speed_variance;
  } else {
    j["pairingStat"] = nullptr;
    j["speedVariance"] = nullptr;
  }
  return j;
}

json describe_setup(const cli::RunConfig& c) {
  return {{"gas", c.gas.describe()},
          {"nozzle", c.nozzle.describe()},
          {"kind", to_string(c.nozzle.kind())},
          {"upstream", {{"B", c.upstream.B.describe()}, {"S", c.upstream.S.describe()}}},
          {"grid", {{"nx", c.nx}, {"ns", c.ns}, {"x1_min", c.x1_min}, {"x1_max", c.x1_max}}},
          {"outlet_condition", "zero streamwise gradient of psi at x1_max"}};
}

// Maps library errors onto the exit-code contract.
int report_error(const std::string& op, const std::exception& e) {
  std::cerr << "error: " << op << ": " << e.what();
  if (auto s = dynamic_cast<const SonicExceeded*>(&e)) {
    std::fprintf(stderr, " [j_max = %.17g, j/j_max = %.17g]", s->j_max(), s->ratio());
  }
  std::cerr << '\n';
  if (dynamic_cast<const SonicExceeded*>(&e) || dynamic_cast<const InfeasibleError*>(&e)) return kSonic;
  if (dynamic_cast<const DivergenceError*>(&e) || dynamic_cast<const LinearSolverError*>(&e) ||
      dynamic_cast<const SolverStateError*>(&e)) {
    return kSolver;
  }
  return kConfig;
}

// ------------------------------------------------------------------------ solve

int cmd_solve(const Globals& g, const std::string& config, double m) {
  cli::RunConfig c;
  try {
    c = cli::load_config(config);
  } catch (const std::exception& e) {
    return report_error("config", e);
  }
  StreamSolution s;
  try {
    const Grid grid = build_grid(c.nozzle, c.nx, c.ns, c.x1_min, c.x1_max);
    s = picard_solve(grid, c.upstream, c.gas, m, c.picard);
  } catch (const std::exception& e) {
    return report_error("picard_solve", e);
  }
  const fs::path dir = output_dir(g, &c);
  const std::string dump = dump_file_name(m, c.nx, c.ns);
  if (c.dumps) write_dump(dir / dump, s.flow);

  const auto& l = s.flow.layout;
  const std::size_t n = s.max_mach_node;
  auto [lo, hi] = std::minmax_element(s.station_flux.begin(), s.station_flux.end());
  json j = {{"command", "solve"},
            {"m", m},
            {"setup", describe_setup(c)},
            {"iterations", s.iterations},
            {"residuals", s.residual_history},
            {"relax_final", s.relax_final},
            {"maxMach", s.max_mach},
            {"maxMachAt", {{"x1", l.xi[n / l.nsig()]}, {"x2", l.y[n]}}},
            {"conservationDefect", s.conservation_defect},
            {"stationFlux", {{"min", *lo}, {"max", *hi}}},
            {"labelClamps", s.label_clamps},
            {"cgIterations", s.cg_iterations},
            {"upstream",
             {{"p_minus", s.upstream.p_minus()}, {"max_flux", s.upstream.max_flux()}, {"at_cap", s.upstream.at_cap()}}},
            {"admissibility", to_json(check_upstream(c.upstream, c.gas, c.nozzle.kind()))},
            {"dump", c.dumps ? json(dump) : json(nullptr)}};
  const fs::path summary = dir / (fs::path(dump).stem().string() + ".json");
  write_json(summary, j);
  std::printf("converged in %zu iterations: maxMach = %.17g, conservation defect = %.3e\n", s.iterations,
              s.max_mach, s.conservation_defect);
  std::printf("summary: %s\n", summary.string().c_str());
  return kOk;
}

// ------------------------------------------------------------------------ sweep

int cmd_sweep(const Globals& g, const std::string& config) {
  cli::RunConfig c;
  try {
    c = cli::load_config(config);
    if (!c.sweep) throw ConfigError("config has no [sweep] table");
  } catch (const std::exception& e) {
    return report_error("config", e);
  }
  SweepOptions opt;
  opt.mach_target = c.sweep->mach_target;
  opt.m_tol = c.sweep->m_tol;
  opt.max_solves = c.sweep->max_solves;
  opt.picard = c.picard;
  SweepReport r;
  try {
    r = sweep_to_sonic(c.setup(), c.sweep->m_start, opt);
  } catch (const std::exception& e) {
    return report_error("sweep_to_sonic", e);
  }
  const fs::path dir = output_dir(g, &c);
  json entries = json::array();
  std::size_t a = 0;
  double max_mach_record = 0.0;
  bool nondecreasing = true;
  for (const auto& e : r.entries) {
    json je = {{"m", e.m},
               {"status", to_string(e.status)},
               {"maxMach", e.status == EntryStatus::Accepted || e.status == EntryStatus::NearSonic
                               ? json(e.max_mach)
                               : json(nullptr)},
               {"iterations", e.iterations},
               {"bracket", {r.m_lo, r.m_hi}}};
    if (!e.message.empty()) je["message"] = e.message;
    if (e.diagnostics) {
      const json d = to_json(*e.diagnostics);
      je["residuals"] = d["weak_residuals"];
      je["curlTV"] = d["curlTV"];
      je["pairingStat"] = d["pairingStat"];
      je["speedVariance"] = d["speedVariance"];
      je["boundaryDefect"] = d["boundaryDefect"];
      je["bounds"] = d["bounds"];
      je["bernoulliDefect"] = d["bernoulliDefect"];
      if (e.max_mach < max_mach_record) nondecreasing = false;
      max_mach_record = std::max(max_mach_record, e.max_mach);
      if (c.dumps) {
        const std::string dump = dump_file_name(e.m, c.nx, c.ns);
        write_dump(dir / dump, r.accepted.at(a));
        je["dump"] = dump;
      }
      ++a;
    }
    entries.push_back(std::move(je));
  }
  json j = {{"command", "sweep"},
            {"setup", describe_setup(c)},
            {"sequence", r.sequence},
            {"entries", entries},
            {"bracket", {{"m_lo", r.m_lo}, {"m_hi", r.m_hi}, {"width", r.m_hi - r.m_lo}, {"m_tol", r.m_tol}}},
            {"bracketAchieved", r.bracket_achieved},
            {"lastAcceptedMaxMach", r.last_accepted_max_mach},
            {"maxMachNondecreasing", nondecreasing},
            {"upstreamMaxFlux", r.upstream_max_flux},
            {"mach_target", opt.mach_target},
            {"compactness_surrogate", "bounded curl total variation and decaying weak residuals"},
            {"note", "the bracket marks where accepted solves stop; whether the flow turns sonic or "
                     "ceases to exist beyond it is not distinguished"}};
  write_json(dir / "sweep_report.json", j);
  std::printf("bracket [%.17g, %.17g] (width %.3e), last accepted maxMach %.6f, %zu solves\n", r.m_lo, r.m_hi,
              r.m_hi - r.m_lo, r.last_accepted_max_mach, r.entries.size());
  std::printf("report: %s\n", (dir / "sweep_report.json").string().c_str());
  return r.bracket_achieved ? kOk : kSonic;
}

// ------------------------------------------------------------------------ diagnose

int cmd_diagnose(const Globals& g, const std::vector<std::string>& dumps, const std::string& config) {
  cli::RunConfig c;
  std::vector<FlowField> flows(dumps.size());
  try {
    c = cli::load_config(config);
    for (std::size_t k = 0; k < dumps.size(); ++k) flows[k] = read_dump(dumps[k], c.gas);
  } catch (const std::exception& e) {
    return report_error("diagnose", e);
  }
  std::vector<DiagnosticsBundle> bundles(flows.size());
  std::vector<std::string> errors(flows.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= flows.size()) return;
        k = next++;
      }
      try {
        bundles[k] = diagnose(flows[k], c.gas, k ? &flows[k - 1] : nullptr);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, g.jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) {
      std::cerr << "error: diagnose: " << dumps[k] << ": " << errors[k] << '\n';
      return kConfig;
    }
  }
  json list = json::array();
  for (std::size_t k = 0; k < flows.size(); ++k) {
    json d = to_json(bundles[k]);
    d["dump"] = dumps[k];
    list.push_back(std::move(d));
  }
  json j = {{"command", "diagnose"}, {"dumps", list}};
  if (flows.size() > 1) {
    std::vector<const FlowField*> seq;
    for (const auto& f : flows) seq.push_back(&f);
    std::vector<double> w(flows.size(), 1.0 / static_cast<double>(flows.size()));
    try {
      const auto st = sequence_concentration(seq, w, c.gas);
      j["sequence"] = {{"pairingStat", st.pairing_stat}, {"speedVariance", st.speed_variance}};
    } catch (const std::exception& e) {
      return report_error("sequence_concentration", e);
    }
  }
  const fs::path dir = output_dir(g, &c);
  write_json(dir / "diagnostics.json", j);
  std::cout << j.dump(2) << '\n';
  return kOk;
}

// ------------------------------------------------------------------------ upstream

int cmd_upstream(const Globals& g, const std::string& config, double m) {
  cli::RunConfig c;
  try {
    c = cli::load_config(config);
  } catch (const std::exception& e) {
    return report_error("config", e);
  }
  const GeometryKind kind = c.nozzle.kind();
  const AdmissibilityReport adm = check_upstream(c.upstream, c.gas, kind);
  UpstreamState up;
  try {
    const std::size_t panels = c.picard.upstream_panels ? c.picard.upstream_panels : std::max<std::size_t>(256, 4 * c.ns);
    up = upstream_state(m, c.upstream, c.gas, kind, panels + panels % 2);
  } catch (const std::exception& e) {
    return report_error("upstream_state", e);
  }
  json prof = json::array();
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    prof.push_back({{"t", t}, {"rho", up.rho(t)}, {"u", up.u(t)}, {"psi", up.psi(t)}});
  }
  json j = {{"command", "upstream"},
            {"m", m},
            {"kind", to_string(kind)},
            {"p_minus", up.p_minus()},
            {"max_flux", up.max_flux()},
            {"at_cap", up.at_cap()},
            {"profile", prof},
            {"admissibility", to_json(adm)}};
  write_json(output_dir(g, &c) / "upstream.json", j);
  std::cout << j.dump(2) << '\n';
  return kOk;
}

// ------------------------------------------------------------------------ oracle

class Params {
 public:
  explicit Params(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("oracle parameter '" + t + "' is not key=value");
      kv_[t.substr(0, eq)] = t.substr(eq + 1);
    }
  }
  double num(const std::string& k, std::optional<double> fallback = std::nullopt) {
    auto it = kv_.find(k);
    if (it == kv_.end()) {
      if (fallback) return *fallback;
      throw ConfigError("oracle parameter '" + k + "' is required");
    }
    used_.insert(k);
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end) throw ConfigError("oracle parameter '" + k + "' is not a number");
    return v;
  }
  std::vector<double> list(const std::string& k, double fallback) {
    auto it = kv_.find(k);
    if (it == kv_.end()) return {fallback};
    used_.insert(k);
    std::vector<double> out;
    std::stringstream ss(it->second);
    for (std::string item; std::getline(ss, item, ',');) {
      char* end = nullptr;
      out.push_back(std::strtod(item.c_str(), &end));
      if (end == item.c_str() || *end) throw ConfigError("oracle parameter '" + k + "' is not a number list");
    }
    return out;
  }
  std::string text(const std::string& k, const std::string& fallback) {
    auto it = kv_.find(k);
    if (it == kv_.end()) return fallback;
    used_.insert(k);
    return it->second;
  }
  void finish() const {
    for (const auto& [k, v] : kv_) {
      if (!used_.count(k)) throw ConfigError("unknown oracle parameter '" + k + "'");
    }
  }
  json echo() const {
    json j = json::object();
    for (const auto& [k, v] : kv_) j[k] = v;
    return j;
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

int cmd_oracle(const std::string& subtask, const std::vector<std::string>& tokens) {
  namespace o = sll_oracle;
  json result;
  try {
    Params p(tokens);
    auto points = [&](double d) { return static_cast<std::size_t>(p.num("points", d)); };
    if (subtask == "speed_from_flux") {
      const double j = p.num("j"), B = p.num("B", 1.0), S = p.num("S", 1.0), gm = p.num("gamma", 1.4);
      result = {{"q", o::speed_from_flux(j, B, S, gm, points(1e4))}};
    } else if (subtask == "j_max") {
      const double B = p.num("B", 1.0), S = p.num("S", 1.0), gm = p.num("gamma", 1.4);
      const auto pk = o::j_max(B, S, gm, points(1e6));
      result = {{"j_max", pk.j}, {"q_at_max", pk.q}};
    } else if (subtask == "critical_state") {
      const std::string law = p.text("law", "full_euler");
      o::Critical cs;
      if (law == "full_euler") {
        cs = o::critical_full(p.num("B", 1.0), p.num("S", 1.0), p.num("gamma", 1.4), points(1e4));
      } else if (law == "gamma_law") {
        cs = o::critical_hom(o::gamma_law(p.num("kappa", 1.0), p.num("gamma", 1.4)), p.num("B"), points(2000));
      } else if (law == "isothermal") {
        cs = o::critical_hom(o::isothermal(p.num("kappa", 1.0)), p.num("B"), points(2000));
      } else {
        throw ConfigError("unknown law '" + law + "'");
      }
      result = {{"rho_cr", cs.rho_cr}, {"q_cr", cs.q_cr}, {"j_max", cs.rho_cr * cs.q_cr}};
    } else if (subtask == "upstream") {
      const std::string kind = p.text("kind", "planar");
      if (kind != "planar" && kind != "axisymmetric") throw ConfigError("kind must be planar or axisymmetric");
      const auto u = o::upstream(p.num("m"), p.list("B", 1.0), p.list("S", 1.0), p.num("gamma", 1.4),
                                 kind == "axisymmetric", static_cast<std::size_t>(p.num("panels", 1e4)));
      result = {{"p_minus", u.p_minus}, {"flux", u.flux}, {"t", u.t}, {"rho", u.rho}, {"u", u.u}};
    } else if (subtask == "quasi1d_mhat") {
      const std::string kind = p.text("kind", "planar");
      if (kind != "planar" && kind != "axisymmetric") throw ConfigError("kind must be planar or axisymmetric");
      result = {{"m_hat", o::quasi1d_mhat(p.num("B", 1.0), p.num("S", 1.0), p.num("gamma", 1.4),
                                           p.num("throat", 0.7), kind == "axisymmetric")}};
    } else {
      throw ConfigError("unknown oracle subtask '" + subtask +
                        "' (expected speed_from_flux, j_max, critical_state, upstream, quasi1d_mhat)");
    }
    p.finish();
    json out = {{"subtask", subtask}, {"inputs", p.echo()}, {"result", result}};
    std::cout << out.dump(2) << '\n';
  } catch (const ConfigError& e) {
    return report_error("oracle", e);
  } catch (const std::exception& e) {
    std::cerr << "error: oracle " << subtask << ": " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subsonic nozzle flow solver and subsonic-sonic limit diagnostics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--output-dir", g.output_dir, "Output directory (default: $SLL_OUTPUT_DIR, config, or .)");
  app.add_option("--jobs", g.jobs, "Worker threads for independent work")->check(CLI::PositiveNumber);

  std::string config;
  double m = 0.0;
  auto* solve = app.add_subcommand("solve", "Solve one mass flux and write a field dump and summary");
  solve->add_option("--config", config, "Run configuration")->required();
  solve->add_option("--mass-flux", m, "Mass flux m")->required();

  auto* sweep = app.add_subcommand("sweep", "Bisect the mass flux toward the sonic limit");
  sweep->add_option("--config", config, "Run configuration")->required();

  std::vector<std::string> dumps;
  auto* diag = app.add_subcommand("diagnose", "Diagnostics for existing field dumps");
  diag->add_option("dumps", dumps, "Field dump files")->required();
  diag->add_option("--config", config, "Run configuration (gas model)")->required();

  auto* upstream = app.add_subcommand("upstream", "Far-field parallel state for a mass flux");
  upstream->add_option("--config", config, "Run configuration")->required();
  upstream->add_option("--mass-flux", m, "Mass flux m")->required();

  std::string subtask;
  std::vector<std::string> params;
  auto* oracle = app.add_subcommand("oracle", "Brute-force reference values");
  oracle->add_option("subtask", subtask, "speed_from_flux | j_max | critical_state | upstream | quasi1d_mhat")
      ->required();
  oracle->add_option("params", params, "key=value parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return cmd_solve(g, config, m);
    if (*sweep) return cmd_sweep(g, config);
    if (*diag) return cmd_diagnose(g, dumps, config);
    if (*upstream) return cmd_upstream(g, config, m);
    if (*oracle) return cmd_oracle(subtask, params);
  } catch (const std::exception& e) {
    return report_error("sll", e);
  }
  return kConfig;
}
