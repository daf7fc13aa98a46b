#include "sll/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sll/errors.hpp"

namespace sll::thermo {

namespace {

constexpr double kSonicSlack = 1e-12;

void require_gamma(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw DomainError("gamma must exceed 1");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive (got " << v << ")";
    throw DomainError(os.str());
  }
}

// 2B - q^2, with the vacuum endpoint q = sqrt(2B) admitted up to rounding.
double cavitation_margin(double q, double B) {
  if (q < 0.0) throw DomainError("speed must be nonnegative");
  const double d = 2.0 * B - q * q;
  if (d >= 0.0) return d;
  if (d >= -8.0 * std::numeric_limits<double>::epsilon() * std::fabs(2.0 * B)) return 0.0;
  std::ostringstream os;
  os << "speed " << q << " exceeds the cavitation speed sqrt(2B) = " << std::sqrt(2.0 * B);
  throw DomainError(os.str());
}

double norm(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::sqrt(s);
}

template <class Rho>
double pairing_impl(std::span<const double> u1, std::span<const double> u2, double q_cr, Rho rho) {
  if (u1.size() != u2.size()) throw DomainError("pairing: dimension mismatch");
  const double q1 = norm(u1);
  const double q2 = norm(u2);
  const double cap = q_cr * (1.0 + kSonicSlack);
  if (q1 > cap || q2 > cap) throw DomainError("pairing: supersonic input");
  const double r1 = rho(q1);
  const double r2 = rho(q2);
  double s = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) s += (r1 * u1[i] - r2 * u2[i]) * (u1[i] - u2[i]);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- tabulated law

TabulatedLaw::TabulatedLaw(std::vector<double> rho, std::vector<double> p) {
  if (rho.size() < 3) throw InputError("tabulated pressure law needs at least three samples");
  if (rho.front() != 0.0) throw InputError("tabulated pressure law must start at rho = 0");
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (!(p[k] > p[k - 1])) throw InputError("tabulated pressure must increase with density");
  }
  if (rho.back() < 1.0) throw InputError("tabulated pressure law must cover rho = 1");
  table_ = num::Pchip(std::move(rho), std::move(p));

  const double rmax = table_.x_max();
  const int n = 10000;
  for (int k = 1; k <= n; ++k) {
    const double r = rmax * k / n;
    const double d1 = table_.d1(r);
    const double d2 = table_.d2(r);
    if (!(d1 > 0.0) || !(2.0 * d1 + r * d2 > 0.0)) {
      std::ostringstream os;
      os << "tabulated pressure law violates p' > 0, 2p' + rho p'' > 0 at rho = " << r;
      throw InputError(os.str());
    }
  }

  // Exact enthalpy of the interpolant at the knots, first relative to knot 1, then shifted so h(1) = 0.
  const auto& x = table_.x();
  h_knots_.assign(x.size(), 0.0);
  for (std::size_t k = 2; k < x.size(); ++k) {
    h_knots_[k] = h_knots_[k - 1] + enthalpy_from_knot(k - 1, x[k]);
  }
  const double shift = enthalpy(1.0);
  for (std::size_t k = 1; k < x.size(); ++k) h_knots_[k] -= shift;

  const double d0 = table_.slopes().front();
  if (d0 > 0.0) {
    b_min_ = kMinusInfinity;
  } else {
    // p'(s)/s has no log term on the first segment: h(0+) is finite.
    b_min_ = 0.5 * d0 + h_knots_[1] - enthalpy_from_knot(0, x[1]);
  }
}

// int_{x_k}^{rho} p'(s)/s ds on segment k (for k = 0 the lower limit is 0 and the log term must vanish
// or rho > 0 is used through the difference of two calls).
double TabulatedLaw::enthalpy_from_knot(std::size_t k, double rho) const {
  const auto& x = table_.x();
  const auto& y = table_.y();
  const auto& d = table_.slopes();
  const double h = x[k + 1] - x[k];
  const double del = (y[k + 1] - y[k]) / h;
  const double c2 = (3.0 * del - 2.0 * d[k] - d[k + 1]) / h;
  const double c3 = (d[k] + d[k + 1] - 2.0 * del) / (h * h);
  // p'(s) = d_k + 2 c2 (s - x_k) + 3 c3 (s - x_k)^2 = A + B s + C s^2
  const double xk = x[k];
  const double C = 3.0 * c3;
  const double B = 2.0 * c2 - 6.0 * c3 * xk;
  const double A = d[k] - 2.0 * c2 * xk + 3.0 * c3 * xk * xk;
  double out = B * (rho - xk) + 0.5 * C * (rho * rho - xk * xk);
  if (A != 0.0) {
    if (xk == 0.0) {
      out += A * std::log(rho);  // caller differences two values on the first segment
    } else {
      out += A * std::log(rho / xk);
    }
  }
  return out;
}

double TabulatedLaw::p(double rho) const {
  if (rho < 0.0 || rho > rho_max()) throw DomainError("density outside the tabulated range");
  return table_.value(rho);
}

double TabulatedLaw::dp(double rho) const {
  if (rho < 0.0 || rho > rho_max()) throw DomainError("density outside the tabulated range");
  return table_.d1(rho);
}

double TabulatedLaw::d2p(double rho) const {
  if (rho < 0.0 || rho > rho_max()) throw DomainError("density outside the tabulated range");
  return table_.d2(rho);
}

double TabulatedLaw::enthalpy(double rho) const {
  if (!(rho > 0.0)) throw DomainError("enthalpy requires rho > 0");
  if (rho > rho_max()) throw DomainError("density above the tabulated range");
  const auto& x = table_.x();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), rho) - x.begin());
  k = std::min(std::max<std::size_t>(k, 1), x.size() - 1) - 1;
  if (k == 0) return h_knots_[1] - (enthalpy_from_knot(0, x[1]) - enthalpy_from_knot(0, rho));
  return h_knots_[k] + enthalpy_from_knot(k, rho);
}

// ---------------------------------------------------------------- pressure law

PressureLaw PressureLaw::gamma_law(double kappa, double gamma) {
  require_positive(kappa, "kappa");
  require_gamma(gamma);
  return PressureLaw(GammaLaw{kappa, gamma});
}

PressureLaw PressureLaw::isothermal(double kappa) {
  require_positive(kappa, "kappa");
  return PressureLaw(Isothermal{kappa});
}

PressureLaw PressureLaw::tabulated(std::vector<double> rho, std::vector<double> p) {
  return PressureLaw(std::make_shared<const TabulatedLaw>(std::move(rho), std::move(p)));
}

PressureLaw::Kind PressureLaw::kind() const {
  switch (law_.index()) {
    case 0:
      return Kind::Gamma;
    case 1:
      return Kind::Isothermal;
    default:
      return Kind::Tabulated;
  }
}

double PressureLaw::p(double rho) const {
  if (rho < 0.0) throw DomainError("density must be nonnegative");
  if (auto g = std::get_if<GammaLaw>(&law_)) return g->kappa * std::pow(rho, g->gamma);
  if (auto i = std::get_if<Isothermal>(&law_)) return i->kappa * rho;
  return std::get<2>(law_)->p(rho);
}

double PressureLaw::dp(double rho) const {
  if (rho < 0.0) throw DomainError("density must be nonnegative");
  if (auto g = std::get_if<GammaLaw>(&law_)) return g->kappa * g->gamma * std::pow(rho, g->gamma - 1.0);
  if (auto i = std::get_if<Isothermal>(&law_)) return i->kappa;
  return std::get<2>(law_)->dp(rho);
}

double PressureLaw::d2p(double rho) const {
  if (rho < 0.0) throw DomainError("density must be nonnegative");
  if (auto g = std::get_if<GammaLaw>(&law_)) {
    return g->kappa * g->gamma * (g->gamma - 1.0) * std::pow(rho, g->gamma - 2.0);
  }
  if (std::get_if<Isothermal>(&law_)) return 0.0;
  return std::get<2>(law_)->d2p(rho);
}

double PressureLaw::enthalpy(double rho) const {
  if (!(rho > 0.0)) throw DomainError("enthalpy requires rho > 0");
  if (auto g = std::get_if<GammaLaw>(&law_)) {
    return g->kappa * g->gamma / (g->gamma - 1.0) * (std::pow(rho, g->gamma - 1.0) - 1.0);
  }
  if (auto i = std::get_if<Isothermal>(&law_)) return i->kappa * std::log(rho);
  return std::get<2>(law_)->enthalpy(rho);
}

double PressureLaw::b_min() const {
  if (auto g = std::get_if<GammaLaw>(&law_)) return -g->kappa * g->gamma / (g->gamma - 1.0);
  if (std::get_if<Isothermal>(&law_)) return kMinusInfinity;
  return std::get<2>(law_)->b_min();
}

double PressureLaw::rho_max() const {
  if (law_.index() == 2) return std::get<2>(law_)->rho_max();
  return std::numeric_limits<double>::infinity();
}

std::string PressureLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (auto g = std::get_if<GammaLaw>(&law_)) {
    os << "gamma_law(kappa=" << g->kappa << ", gamma=" << g->gamma << ")";
  } else if (auto i = std::get_if<Isothermal>(&law_)) {
    os << "isothermal(kappa=" << i->kappa << ")";
  } else {
    os << "tabulated(" << std::get<2>(law_)->samples() << " samples)";
  }
  return os.str();
}

// ---------------------------------------------------------------- gas model

GasModel GasModel::full_euler(double gamma) {
  require_gamma(gamma);
  GasModel g;
  g.kind_ = ModelKind::FullEuler;
  g.gamma_ = gamma;
  return g;
}

GasModel GasModel::homentropic(PressureLaw law) {
  GasModel g;
  g.kind_ = ModelKind::Homentropic;
  g.gamma_ = law.as_gamma() ? law.as_gamma()->gamma : std::numeric_limits<double>::quiet_NaN();
  g.law_ = std::make_shared<const PressureLaw>(std::move(law));
  return g;
}

const PressureLaw& GasModel::law() const {
  if (!law_) throw DomainError("full Euler gas has no barotropic pressure law");
  return *law_;
}

std::string GasModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == ModelKind::FullEuler) {
    os << "full_euler(gamma=" << gamma_ << ")";
  } else {
    os << "homentropic(" << law_->describe() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- full Euler

double critical_speed_full(double B, double gamma) {
  require_gamma(gamma);
  require_positive(B, "Bernoulli constant");
  return std::sqrt(2.0 * (gamma - 1.0) * B / (gamma + 1.0));
}

double density_from_speed(double q, double B, double S, double gamma) {
  require_gamma(gamma);
  require_positive(S, "entropy");
  const double d = cavitation_margin(q, B);
  return std::pow(d / (2.0 * S), 1.0 / (gamma - 1.0));
}

double pressure_from_speed(double q, double B, double S, double gamma) {
  const double rho = density_from_speed(q, B, S, gamma);
  return (gamma - 1.0) / gamma * S * std::pow(rho, gamma);
}

double sound_speed(double rho, double p, double gamma) {
  if (!(rho > 0.0)) throw DomainError("sound speed requires rho > 0");
  if (p < 0.0) throw DomainError("sound speed requires p >= 0");
  return std::sqrt(gamma * p / rho);
}

double mach(double q, double c) {
  if (!(c > 0.0)) throw DomainError("Mach number requires c > 0");
  return q / c;
}

FluxDensity mass_flux_density(double q, double B, double S, double gamma) {
  const double rho = density_from_speed(q, B, S, gamma);
  const double c2 = 0.5 * (gamma - 1.0) * cavitation_margin(q, B);
  if (c2 == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
  return {rho * q, rho * (1.0 - q * q / c2)};
}

CriticalState critical_state_full(double B, double S, double gamma) {
  const double q_cr = critical_speed_full(B, gamma);
  require_positive(S, "entropy");
  const double rho_cr = std::pow(2.0 * B / ((gamma + 1.0) * S), 1.0 / (gamma - 1.0));
  return {q_cr, rho_cr, rho_cr * q_cr};
}

double max_mass_flux(double B, double S, double gamma) {
  return critical_state_full(B, S, gamma).j_max;
}

double speed_from_mass_flux(double j, double B, double S, double gamma) {
  if (j < 0.0 || std::isnan(j)) throw DomainError("mass-flux density must be nonnegative");
  const CriticalState cs = critical_state_full(B, S, gamma);
  if (j > cs.j_max * (1.0 + kSonicSlack)) {
    std::ostringstream os;
    os.precision(17);
    os << "mass-flux density " << j << " exceeds sonic maximum j_max = " << cs.j_max;
    throw SonicExceeded(os.str(), cs.j_max, j / cs.j_max);
  }
  if (j >= cs.j_max) return cs.q_cr;
  if (j == 0.0) return 0.0;
  const double e = 1.0 / (gamma - 1.0);
  auto F = [&](double q) { return std::pow(std::max(0.0, (2.0 * B - q * q) / (2.0 * S)), e) * q - j; };
  return num::bisect_fast(F, 0.0, cs.q_cr).x;
}

double bernoulli(double rho, double p, double q, double gamma) {
  require_positive(rho, "density");
  return 0.5 * q * q + gamma * p / ((gamma - 1.0) * rho);
}

double entropy(double rho, double p, double gamma) {
  require_positive(rho, "density");
  return gamma * p / ((gamma - 1.0) * std::pow(rho, gamma));
}

double pairing(std::span<const double> u1, std::span<const double> u2, double B, double S,
               double gamma) {
  const double q_cr = critical_speed_full(B, gamma);
  return pairing_impl(u1, u2, q_cr, [&](double q) { return density_from_speed(q, B, S, gamma); });
}

// ---------------------------------------------------------------- homentropic

double sound_speed(const PressureLaw& law, double rho) {
  if (!(rho > 0.0)) throw DomainError("sound speed requires rho > 0");
  return std::sqrt(law.dp(rho));
}

double enthalpy_hom(const PressureLaw& law, double rho) { return law.enthalpy(rho); }

double b_min(const PressureLaw& law) { return law.b_min(); }

namespace {

// Smallest power-of-two bracket [lo, hi] with g(lo) <= 0 <= g(hi) for increasing g.
template <class G>
std::pair<double, double> grow_bracket(G g, double rho_max) {
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (g(lo) > 0.0) {
    lo *= 0.5;
    if (++guard > 2000 || lo == 0.0) return {0.0, 1.0};
  }
  guard = 0;
  while (g(hi) < 0.0) {
    if (hi >= rho_max) throw DomainError("state lies beyond the tabulated density range");
    hi = std::min(2.0 * hi, rho_max);
    if (++guard > 2000) throw DomainError("density bracket search failed");
  }
  if (lo == hi) lo = 0.5 * hi;
  return {lo, hi};
}

}  // namespace

CriticalState critical_state_hom(const PressureLaw& law, double B) {
  const double bmin = law.b_min();
  if (!(B > bmin)) {
    std::ostringstream os;
    os << "Bernoulli constant " << B << " at or below B_min = " << bmin << " (vacuum-critical regime)";
    throw DomainError(os.str());
  }
  auto g = [&](double r) { return r > 0.0 ? law.f(r) - B : bmin - B; };
  auto [lo, hi] = grow_bracket(g, law.rho_max());
  const double rho_cr = num::bisect_fast(g, lo, hi).x;
  const double q_cr = std::sqrt(law.dp(rho_cr));
  return {q_cr, rho_cr, rho_cr * q_cr};
}

double density_from_bernoulli_hom(const PressureLaw& law, double q, double B) {
  if (q < 0.0) throw DomainError("speed must be nonnegative");
  const double t = B - 0.5 * q * q;
  double inf_h = kMinusInfinity;
  if (law.kind() != PressureLaw::Kind::Isothermal) {
    // h is bounded below exactly when p'(s)/s is integrable at 0.
    inf_h = law.b_min() - 0.5 * law.dp(0.0);
    if (law.b_min() == kMinusInfinity) inf_h = kMinusInfinity;
  }
  if (t < inf_h) throw DomainError("B - q^2/2 below inf h: vacuum");
  if (t == inf_h) return 0.0;
  auto g = [&](double r) { return r > 0.0 ? law.enthalpy(r) - t : inf_h - t; };
  auto [lo, hi] = grow_bracket(g, law.rho_max());
  return num::bisect_fast(g, lo, hi).x;
}

FluxDensity mass_flux_density_hom(const PressureLaw& law, double q, double B) {
  const double rho = density_from_bernoulli_hom(law, q, B);
  if (rho == 0.0) return {0.0, 0.0};
  const double c2 = law.dp(rho);
  return {rho * q, rho * (1.0 - q * q / c2)};
}

double speed_from_mass_flux_hom(const PressureLaw& law, double j, double B) {
  if (j < 0.0 || std::isnan(j)) throw DomainError("mass-flux density must be nonnegative");
  const CriticalState cs = critical_state_hom(law, B);
  if (j > cs.j_max * (1.0 + kSonicSlack)) {
    std::ostringstream os;
    os.precision(17);
    os << "mass-flux density " << j << " exceeds sonic maximum j_max = " << cs.j_max;
    throw SonicExceeded(os.str(), cs.j_max, j / cs.j_max);
  }
  if (j >= cs.j_max) return cs.q_cr;
  if (j == 0.0) return 0.0;
  const double rho_stag = density_from_bernoulli_hom(law, 0.0, B);
  // rho * sqrt(2(B - h(rho))) decreases on [rho_cr, rho_stag].
  auto G = [&](double r) {
    const double k = 2.0 * (B - law.enthalpy(r));
    return j - r * std::sqrt(std::max(0.0, k));
  };
  const double rho = num::bisect_fast(G, cs.rho_cr, rho_stag).x;
  return j / rho;
}

double bernoulli_hom(const PressureLaw& law, double rho, double q) {
  return 0.5 * q * q + law.enthalpy(rho);
}

double pairing_hom(std::span<const double> u1, std::span<const double> u2, const PressureLaw& law,
                   double B) {
  const CriticalState cs = critical_state_hom(law, B);
  return pairing_impl(u1, u2, cs.q_cr,
                      [&](double q) { return density_from_bernoulli_hom(law, q, B); });
}

// ---------------------------------------------------------------- model-generic

CriticalState critical_state(const GasModel& gas, double B, double S) {
  if (gas.homentropic()) return critical_state_hom(gas.law(), B);
  return critical_state_full(B, S, gas.gamma());
}

double density_from_speed(const GasModel& gas, double q, double B, double S) {
  if (gas.homentropic()) return density_from_bernoulli_hom(gas.law(), q, B);
  return density_from_speed(q, B, S, gas.gamma());
}

double pressure_from_density(const GasModel& gas, double rho, double S) {
  if (gas.homentropic()) return gas.law().p(rho);
  const double g = gas.gamma();
  return (g - 1.0) / g * S * std::pow(rho, g);
}

double sound_speed(const GasModel& gas, double rho, double p) {
  if (gas.homentropic()) return sound_speed(gas.law(), rho);
  return sound_speed(rho, p, gas.gamma());
}

double speed_from_mass_flux(const GasModel& gas, double j, double B, double S) {
  if (gas.homentropic()) return speed_from_mass_flux_hom(gas.law(), j, B);
  return speed_from_mass_flux(j, B, S, gas.gamma());
}

double pairing(const GasModel& gas, std::span<const double> u1, std::span<const double> u2,
               double B, double S) {
  if (gas.homentropic()) return pairing_hom(u1, u2, gas.law(), B);
  return pairing(u1, u2, B, S, gas.gamma());
}

}  // namespace sll::thermo
