#pragma once

#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sll/numerics.hpp"

namespace sll::thermo {

// Explicit sentinel for an unbounded-below Bernoulli floor.
inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

struct GammaLaw {
  double kappa;
  double gamma;
};

struct Isothermal {
  double kappa;
};

// p(rho) from monotone samples; the first sample must be at rho = 0.
class TabulatedLaw {
 public:
  TabulatedLaw(std::vector<double> rho, std::vector<double> p);

  double p(double rho) const;
  double dp(double rho) const;
  double d2p(double rho) const;
  double enthalpy(double rho) const;
  double b_min() const { return b_min_; }
  double rho_max() const { return table_.x_max(); }
  std::size_t samples() const { return table_.x().size(); }

 private:
  double enthalpy_from_knot(std::size_t k, double rho) const;

  num::Pchip table_;
  std::vector<double> h_knots_;  // enthalpy at each knot except rho = 0
  double b_min_ = 0.0;
};

class PressureLaw {
 public:
  enum class Kind { Gamma, Isothermal, Tabulated };

  static PressureLaw gamma_law(double kappa, double gamma);
  static PressureLaw isothermal(double kappa);
  static PressureLaw tabulated(std::vector<double> rho, std::vector<double> p);

  Kind kind() const;
  double p(double rho) const;
  double dp(double rho) const;
  double d2p(double rho) const;
  // h(rho) = int_1^rho p'(s)/s ds
  double enthalpy(double rho) const;
  // f(rho) = p'(rho)/2 + h(rho); strictly increasing for admissible laws.
  double f(double rho) const { return 0.5 * dp(rho) + enthalpy(rho); }
  double b_min() const;
  // Largest density at which the law is defined (infinite for closed forms).
  double rho_max() const;
  std::string describe() const;

  const GammaLaw* as_gamma() const { return std::get_if<GammaLaw>(&law_); }

 private:
  using Variant = std::variant<GammaLaw, Isothermal, std::shared_ptr<const TabulatedLaw>>;
  explicit PressureLaw(Variant v) : law_(std::move(v)) {}
  Variant law_;
};

enum class ModelKind { FullEuler, Homentropic };

class GasModel {
 public:
  static GasModel full_euler(double gamma);
  static GasModel homentropic(PressureLaw law);

  ModelKind kind() const { return kind_; }
  bool homentropic() const { return kind_ == ModelKind::Homentropic; }
  // Adiabatic exponent; for homentropic laws this is the GammaLaw exponent or NaN.
  double gamma() const { return gamma_; }
  const PressureLaw& law() const;
  std::string describe() const;

 private:
  ModelKind kind_ = ModelKind::FullEuler;
  double gamma_ = 1.4;
  std::shared_ptr<const PressureLaw> law_;
};

struct CriticalState {
  double q_cr;
  double rho_cr;
  double j_max;
};

struct FluxDensity {
  double j;
  double dj_dq;
};

// Full Euler (polytropic) relations.
double critical_speed_full(double B, double gamma);
double density_from_speed(double q, double B, double S, double gamma);
double pressure_from_speed(double q, double B, double S, double gamma);
double sound_speed(double rho, double p, double gamma);
double mach(double q, double c);
FluxDensity mass_flux_density(double q, double B, double S, double gamma);
double speed_from_mass_flux(double j, double B, double S, double gamma);
CriticalState critical_state_full(double B, double S, double gamma);
double max_mass_flux(double B, double S, double gamma);
double bernoulli(double rho, double p, double q, double gamma);
double entropy(double rho, double p, double gamma);
double pairing(std::span<const double> u1, std::span<const double> u2, double B, double S,
               double gamma);

// Homentropic relations.
double sound_speed(const PressureLaw& law, double rho);
double enthalpy_hom(const PressureLaw& law, double rho);
double b_min(const PressureLaw& law);
CriticalState critical_state_hom(const PressureLaw& law, double B);
double density_from_bernoulli_hom(const PressureLaw& law, double q, double B);
FluxDensity mass_flux_density_hom(const PressureLaw& law, double q, double B);
double speed_from_mass_flux_hom(const PressureLaw& law, double j, double B);
double bernoulli_hom(const PressureLaw& law, double rho, double q);
double pairing_hom(std::span<const double> u1, std::span<const double> u2, const PressureLaw& law,
                   double B);

// Model-generic helpers used by the solver. S is ignored for homentropic gases.
CriticalState critical_state(const GasModel& gas, double B, double S);
double density_from_speed(const GasModel& gas, double q, double B, double S);
double pressure_from_density(const GasModel& gas, double rho, double S);
double sound_speed(const GasModel& gas, double rho, double p);
double speed_from_mass_flux(const GasModel& gas, double j, double B, double S);
double pairing(const GasModel& gas, std::span<const double> u1, std::span<const double> u2,
               double B, double S);

}  // namespace sll::thermo
