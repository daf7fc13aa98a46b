#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sll/errors.hpp"

namespace sll::cli {

namespace {

// Typed access to one table; every key read is marked so leftovers can be rejected.
class Section {
 public:
  Section(const TomlDocument& doc, std::string name) : name_(std::move(name)) {
    auto it = doc.find(name_);
    if (it != doc.end()) table_ = &it->second;
  }

  bool present() const { return table_ != nullptr; }
  bool has(const std::string& key) const { return table_ && table_->count(key); }

  const TomlValue* get(const std::string& key) {
    if (!table_) return nullptr;
    auto it = table_->find(key);
    if (it == table_->end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  double number(const std::string& key, double fallback) {
    const TomlValue* v = get(key);
    if (!v) return fallback;
    if (auto d = std::get_if<double>(&v->v)) return *d;
    fail(key, "expected a number");
  }

  double required_number(const std::string& key) {
    if (!has(key)) fail(key, "missing required key");
    return number(key, 0.0);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const double d = number(key, static_cast<double>(fallback));
    if (!(d >= 0.0) || d != std::floor(d)) fail(key, "expected a nonnegative integer");
    return static_cast<std::size_t>(d);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const TomlValue* v = get(key);
    if (!v) return fallback;
    if (auto s = std::get_if<std::string>(&v->v)) return *s;
    fail(key, "expected a string");
  }

  bool flag(const std::string& key, bool fallback) {
    const TomlValue* v = get(key);
    if (!v) return fallback;
    if (auto b = std::get_if<bool>(&v->v)) return *b;
    fail(key, "expected true or false");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where = "[" + name_ + "] " + key;
    if (table_ && table_->count(key)) where += " (line " + std::to_string(table_->at(key).line) + ")";
    throw ConfigError(where + ": " + what);
  }

  void reject_unknown() const {
    if (!table_) return;
    for (const auto& [k, v] : *table_) {
      if (!used_.count(k)) {
        throw ConfigError("unknown key '" + k + "' in [" + name_ + "] (line " + std::to_string(v.line) + ")");
      }
    }
  }

 private:
  std::string name_;
  const TomlTable* table_ = nullptr;
  std::set<std::string> used_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  if (!std::filesystem::exists(path)) throw ConfigError("referenced file does not exist: " + path.string());
  return path;
}

// number -> constant, array -> polynomial coefficients, string -> two-column table.
Curve profile(Section& s, const std::string& key, double fallback, const std::filesystem::path& base) {
  const TomlValue* v = s.get(key);
  if (!v) return Curve::constant(fallback);
  if (auto d = std::get_if<double>(&v->v)) return Curve::constant(*d);
  if (auto a = std::get_if<std::vector<double>>(&v->v)) {
    if (a->empty()) s.fail(key, "empty coefficient list");
    return Curve::polynomial(*a);
  }
  if (auto p = std::get_if<std::string>(&v->v)) {
    auto [x, y] = read_two_columns(resolve(base, *p));
    return Curve::tabulated(std::move(x), std::move(y));
  }
  s.fail(key, "expected a number, coefficient array or table path");
}

GeometryKind geometry_kind(Section& s) {
  const std::string k = s.text("kind", "planar");
  if (k == "planar") return GeometryKind::Planar;
  if (k == "axisymmetric") return GeometryKind::Axisymmetric;
  s.fail("kind", "expected \"planar\" or \"axisymmetric\"");
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table " + path.string());
  std::vector<double> x, y;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a)) continue;
    std::string rest;
    if (!(ls >> b) || (ls >> rest)) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected two numeric columns");
    }
    x.push_back(a);
    y.push_back(b);
  }
  if (x.size() < 3) throw ConfigError(path.string() + ": table needs at least three rows");
  return {x, y};
}

RunConfig config_from_toml(const TomlDocument& doc, const std::filesystem::path& base) {
  static const std::set<std::string> known = {"", "gas", "nozzle", "upstream", "solver", "sweep", "output"};
  for (const auto& [name, table] : doc) {
    if (!known.count(name)) throw ConfigError("unknown table [" + name + "]");
    if (name.empty() && !table.empty()) {
      throw ConfigError("key '" + table.begin()->first + "' must appear inside a table");
    }
  }
  RunConfig c;

  Section gas(doc, "gas");
  const std::string model = gas.text("model", "full_euler");
  if (model == "full_euler") {
    const double g = gas.number("gamma", 1.4);
    if (!(g > 1.0)) gas.fail("gamma", "must exceed 1");
    c.gas = thermo::GasModel::full_euler(g);
  } else if (model == "homentropic") {
    const std::string law = gas.text("law", "gamma_law");
    if (law == "gamma_law") {
      const double g = gas.number("gamma", 1.4);
      if (!(g > 1.0)) gas.fail("gamma", "must exceed 1");
      c.gas = thermo::GasModel::homentropic(thermo::PressureLaw::gamma_law(gas.number("kappa", 1.0), g));
    } else if (law == "isothermal") {
      c.gas = thermo::GasModel::homentropic(thermo::PressureLaw::isothermal(gas.number("kappa", 1.0)));
    } else if (law == "tabulated") {
      auto [r, p] = read_two_columns(resolve(base, gas.text("table", "")));
      c.gas = thermo::GasModel::homentropic(thermo::PressureLaw::tabulated(std::move(r), std::move(p)));
    } else {
      gas.fail("law", "expected gamma_law, isothermal or tabulated");
    }
  } else {
    gas.fail("model", "expected full_euler or homentropic");
  }
  gas.reject_unknown();

  Section noz(doc, "nozzle");
  const GeometryKind kind = geometry_kind(noz);
  const std::string shape = noz.text("shape", "straight");
  if (shape == "straight") {
    c.nozzle = Nozzle::straight(kind);
  } else if (shape == "tanh_contraction") {
    const double amp = noz.number("amplitude", 0.3);
    const double width = noz.number("width", 1.0);
    if (!(amp > -1.0 && amp < 1.0)) noz.fail("amplitude", "must lie in (-1, 1)");
    if (!(width > 0.0)) noz.fail("width", "must be positive");
    c.nozzle = Nozzle::tanh_contraction(kind, amp, noz.number("center", 0.0), width);
  } else if (shape == "table") {
    auto upper = profile(noz, "upper", 1.0, base);
    if (kind == GeometryKind::Planar) {
      c.nozzle = Nozzle::planar(profile(noz, "lower", 0.0, base), upper);
    } else {
      c.nozzle = Nozzle::axisymmetric(upper);
    }
  } else {
    noz.fail("shape", "expected straight, tanh_contraction or table");
  }
  c.tol_far = noz.number("tol_far", 1e-6);
  noz.reject_unknown();

  Section up(doc, "upstream");
  c.upstream.B = profile(up, "B", 1.0, base);
  c.upstream.S = profile(up, "S", 1.0, base);
  up.reject_unknown();

  Section sol(doc, "solver");
  c.nx = sol.count("nx", 64);
  c.ns = sol.count("ns", 32);
  if (c.nx < 8) sol.fail("nx", "must be at least 8");
  if (c.ns < 8) sol.fail("ns", "must be at least 8");
  c.x1_min = sol.number("x1_min", -20.0);
  c.x1_max = sol.number("x1_max", 20.0);
  if (!(c.x1_max > c.x1_min)) sol.fail("x1_max", "must exceed x1_min");
  auto& p = c.picard;
  p.tol = sol.number("tol", p.tol);
  p.max_iter = sol.count("max_iter", p.max_iter);
  p.relax = sol.number("relax", p.relax);
  p.relax_min = sol.number("relax_min", p.relax_min);
  p.mach_cap = sol.number("mach_cap", p.mach_cap);
  p.upstream_panels = sol.count("upstream_panels", p.upstream_panels);
  p.elliptic.cg_tol = sol.number("cg_tol", p.elliptic.cg_tol);
  p.elliptic.max_cg_iter = sol.count("max_cg_iter", p.elliptic.max_cg_iter);
  if (!(p.tol > 0.0)) sol.fail("tol", "must be positive");
  if (!(p.relax > 0.0 && p.relax <= 1.0)) sol.fail("relax", "must lie in (0, 1]");
  if (!(p.relax_min > 0.0 && p.relax_min <= p.relax)) sol.fail("relax_min", "must lie in (0, relax]");
  if (!(p.mach_cap > 0.0 && p.mach_cap < 1.0)) sol.fail("mach_cap", "must lie in (0, 1)");
  if (!(p.elliptic.cg_tol > 0.0)) sol.fail("cg_tol", "must be positive");
  if (p.upstream_panels && (p.upstream_panels < 256 || p.upstream_panels % 2)) {
    sol.fail("upstream_panels", "must be even and at least 256");
  }
  sol.reject_unknown();

  Section sw(doc, "sweep");
  if (sw.present()) {
    SweepBlock b;
    b.m_start = sw.required_number("m_start");
    b.m_tol = sw.number("m_tol", b.m_tol);
    b.mach_target = sw.number("mach_target", b.mach_target);
    b.max_solves = sw.count("max_solves", b.max_solves);
    if (!(b.m_start > 0.0)) sw.fail("m_start", "must be positive");
    if (!(b.m_tol > 0.0)) sw.fail("m_tol", "must be positive");
    if (!(b.mach_target > 0.0 && b.mach_target < 1.0)) sw.fail("mach_target", "must lie in (0, 1)");
    if (b.max_solves < 2) sw.fail("max_solves", "must be at least 2");
    c.sweep = b;
  }
  sw.reject_unknown();

  Section out(doc, "output");
  if (out.has("directory")) c.output_dir = out.text("directory", "");
  c.dumps = out.flag("dumps", true);
  out.reject_unknown();

  const auto report = validate_nozzle(c.nozzle, c.x1_min, c.x1_max, c.tol_far);
  for (const auto& chk : report.checks) {
    if (!chk.passed) {
      std::ostringstream os;
      os << "nozzle check '" << chk.name << "' failed: measured " << chk.measured << ", threshold "
         << chk.threshold;
      if (chk.location) os << " at x1 = " << *chk.location;
      if (!chk.detail.empty()) os << " (" << chk.detail << ")";
      throw ConfigError(os.str());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  return config_from_toml(read_toml(path.string()), path.parent_path());
}

}  // namespace sll::cli
