#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sll/curve.hpp"
#include "sll/geometry.hpp"
#include "sll/thermo.hpp"

namespace sll {

// Upstream Bernoulli and entropy profiles over the transverse label in [0, 1].
// S is ignored by homentropic gases.
struct UpstreamData {
  Curve B = Curve::constant(1.0);
  Curve S = Curve::constant(1.0);

  static UpstreamData uniform(double B, double S = 1.0);
  bool uniform() const;
};

struct AdmissibilityReport {
  double inf_B = 0.0;
  double inf_S = 0.0;
  bool positive = false;        // inf B > 0 and inf S > 0 (or B > B_min for homentropic gases)
  bool b_min_unbounded = false; // homentropic law with B_min = -inf
  // planar: (S B^-gamma)'(0) >= 0, (S B^-gamma)'(1) <= 0
  double slope_lower = 0.0;
  double slope_upper = 0.0;
  // axisymmetric: B'(0) = 0, B' >= 0, S'(0) = 0, S' <= 0
  double dB_axis = 0.0;
  double dS_axis = 0.0;
  double min_dB = 0.0;
  double max_dS = 0.0;
  bool sign_conditions = false;
  std::vector<std::string> notes;
};

AdmissibilityReport check_upstream(const UpstreamData& data, const thermo::GasModel& gas,
                                   GeometryKind kind, std::size_t samples = 1001);

// Parallel far-field state at constant pressure carrying mass flux m.
class UpstreamState {
 public:
  double mass_flux() const { return m_; }
  double p_minus() const { return p_; }
  bool at_cap() const { return at_cap_; }
  // Largest mass flux with a subsonic parallel state.
  double max_flux() const { return m_max_; }
  GeometryKind kind() const { return kind_; }
  std::size_t panels() const { return panels_; }

  double rho(double t) const;
  double u(double t) const;
  double flux_density(double t) const { return rho(t) * u(t); }
  double psi(double t) const;
  // d psi / dt = rho u (planar) or t rho u (axisymmetric)
  double dpsi(double t) const;
  // Inverse of psi, extended beyond [0, m] so callers can measure the excursion.
  double label(double psi) const;

  friend UpstreamState upstream_state(double, const UpstreamData&, const thermo::GasModel&,
                                      GeometryKind, std::size_t);

 private:
  UpstreamData data_;
  thermo::GasModel gas_ = thermo::GasModel::full_euler(1.4);
  GeometryKind kind_ = GeometryKind::Planar;
  double m_ = 0.0, p_ = 0.0, rho_hom_ = 0.0, m_max_ = 0.0, scale_ = 1.0;
  bool at_cap_ = false;
  std::size_t panels_ = 0;
  std::vector<double> t_, psi_, dpsi_;
};

UpstreamState upstream_state(double m, const UpstreamData& data, const thermo::GasModel& gas,
                             GeometryKind kind = GeometryKind::Planar, std::size_t panels = 256);

// Maximal subsonic upstream mass flux for the profiles.
double max_upstream_flux(const UpstreamData& data, const thermo::GasModel& gas, GeometryKind kind,
                         std::size_t panels = 256);

struct TransportValue {
  double B;
  double S;
  double dB;
  double dS;
};

// Label excursions up to this size are clamped silently.
inline constexpr double kLabelRoundoff = 1e-9;
// Larger excursions up to this size are clamped and counted; beyond it the state is rejected.
inline constexpr double kLabelReject = 1e-4;

TransportValue transport_eval(double label, const UpstreamData& data,
                              std::size_t* clamp_counter = nullptr);

// Vorticity d(u2)/dx - d(u1)/dy carried by the streamline through a node with density rho, label L
// and transverse coordinate r (radius, axisymmetric only).
double vorticity_source(double rho, double label, double r, const UpstreamState& up,
                        const UpstreamData& data, const thermo::GasModel& gas);

}  // namespace sll
