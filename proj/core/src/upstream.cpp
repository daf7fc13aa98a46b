#include "sll/upstream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sll/errors.hpp"
#include "sll/numerics.hpp"

namespace sll {

UpstreamData UpstreamData::uniform(double B, double S) {
  return UpstreamData{Curve::constant(B), Curve::constant(S)};
}

bool UpstreamData::uniform() const {
  return B.kind() == Curve::Kind::Constant && S.kind() == Curve::Kind::Constant;
}

AdmissibilityReport check_upstream(const UpstreamData& data, const thermo::GasModel& gas,
                                   GeometryKind kind, std::size_t samples) {
  if (!data.B.covers(0.0, 1.0) || !data.S.covers(0.0, 1.0)) {
    throw InputError("upstream profiles must be defined on [0, 1]");
  }
  AdmissibilityReport r;
  r.inf_B = std::numeric_limits<double>::infinity();
  r.inf_S = std::numeric_limits<double>::infinity();
  r.min_dB = std::numeric_limits<double>::infinity();
  r.max_dS = -std::numeric_limits<double>::infinity();
  samples = std::max<std::size_t>(samples, 2);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    r.inf_B = std::min(r.inf_B, data.B.value(t));
    r.inf_S = std::min(r.inf_S, data.S.value(t));
    r.min_dB = std::min(r.min_dB, data.B.d1(t));
    r.max_dS = std::max(r.max_dS, data.S.d1(t));
  }
  const double g = gas.gamma();
  auto slope = [&](double t) {
    // d/dt (S B^-gamma)
    const double B = data.B.value(t), S = data.S.value(t);
    return data.S.d1(t) * std::pow(B, -g) - g * S * std::pow(B, -g - 1.0) * data.B.d1(t);
  };
  if (gas.homentropic()) {
    const double bmin = gas.law().b_min();
    r.b_min_unbounded = bmin == thermo::kMinusInfinity;
    r.positive = r.inf_B > bmin;
    r.inf_S = std::numeric_limits<double>::quiet_NaN();
    if (r.b_min_unbounded) r.notes.push_back("pressure law has B_min = -inf");
  } else {
    r.positive = r.inf_B > 0.0 && r.inf_S > 0.0;
  }
  r.dB_axis = data.B.d1(0.0);
  r.dS_axis = data.S.d1(0.0);
  if (kind == GeometryKind::Planar) {
    if (!gas.homentropic()) {
      r.slope_lower = slope(0.0);
      r.slope_upper = slope(1.0);
    } else {
      r.slope_lower = -data.B.d1(0.0);
      r.slope_upper = -data.B.d1(1.0);
    }
    r.sign_conditions = r.slope_lower >= 0.0 && r.slope_upper <= 0.0;
  } else {
    const bool hom = gas.homentropic();
    r.sign_conditions = std::fabs(r.dB_axis) <= 1e-12 && r.min_dB >= -1e-12 &&
                      (hom || (std::fabs(r.dS_axis) <= 1e-12 && r.max_dS <= 1e-12));
  }
  if (!r.sign_conditions) r.notes.push_back("upstream profiles violate the monotonicity sign conditions");
  return r;
}

namespace {

struct Bounds {
  double lo;  // sonic end (largest flux)
  double hi;  // stagnation end
};

// Integration nodes and weights for composite Simpson on [0, 1].
void simpson_nodes(std::size_t panels, std::vector<double>& t, std::vector<double>& w) {
  t.resize(panels + 1);
  w.resize(panels + 1);
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t k = 0; k <= panels; ++k) {
    t[k] = static_cast<double>(k) * h;
    w[k] = (k == 0 || k == panels) ? h / 3.0 : (k % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
  }
}

std::size_t even_panels(std::size_t panels) {
  panels = std::max<std::size_t>(panels, 256);
  return panels + (panels % 2);
}

// Pointwise parallel state for a given scalar (pressure for full Euler, density for homentropic).
struct Pointwise {
  const UpstreamData& data;
  const thermo::GasModel& gas;

  double rho(double t, double level) const {
    if (gas.homentropic()) return level;
    const double g = gas.gamma();
    return std::pow(g * level / ((g - 1.0) * data.S.value(t)), 1.0 / g);
  }
  double u(double t, double level) const {
    const double B = data.B.value(t);
    double e;
    if (gas.homentropic()) {
      e = gas.law().enthalpy(level);
    } else {
      const double g = gas.gamma();
      e = g * level / ((g - 1.0) * rho(t, level));
    }
    return std::sqrt(std::max(0.0, 2.0 * (B - e)));
  }
};

Bounds level_bounds(const UpstreamData& data, const thermo::GasModel& gas,
                    const std::vector<double>& t) {
  Bounds b{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (double tk : t) {
    const double B = data.B.value(tk);
    if (gas.homentropic()) {
      const auto cs = thermo::critical_state_hom(gas.law(), B);
      b.lo = std::max(b.lo, cs.rho_cr);
      b.hi = std::min(b.hi, thermo::density_from_bernoulli_hom(gas.law(), 0.0, B));
    } else {
      const double g = gas.gamma();
      const double S = data.S.value(tk);
      const auto cs = thermo::critical_state_full(B, S, g);
      b.lo = std::max(b.lo, (g - 1.0) / g * S * std::pow(cs.rho_cr, g));
      const double rs = std::pow(B / S, 1.0 / (g - 1.0));
      b.hi = std::min(b.hi, (g - 1.0) / g * S * std::pow(rs, g));
    }
  }
  return b;
}

double flux_at(const Pointwise& pw, GeometryKind kind, const std::vector<double>& t,
               const std::vector<double>& w, double level) {
  double s = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double weight = kind == GeometryKind::Axisymmetric ? t[k] : 1.0;
    s += w[k] * weight * pw.rho(t[k], level) * pw.u(t[k], level);
  }
  return s;
}

void require_positive_data(const UpstreamData& data, const thermo::GasModel& gas, GeometryKind kind) {
  const auto adm = check_upstream(data, gas, kind, 257);
  if (!adm.positive) {
    throw InputError(gas.homentropic() ? "upstream Bernoulli profile must exceed B_min"
                                       : "upstream profiles need inf B > 0 and inf S > 0");
  }
}

}  // namespace

double max_upstream_flux(const UpstreamData& data, const thermo::GasModel& gas, GeometryKind kind,
                         std::size_t panels) {
  require_positive_data(data, gas, kind);
  panels = even_panels(panels);
  std::vector<double> t, w;
  simpson_nodes(panels, t, w);
  const Bounds b = level_bounds(data, gas, t);
  if (b.lo > b.hi) throw InfeasibleError("no subsonic parallel upstream state exists");
  return flux_at(Pointwise{data, gas}, kind, t, w, b.lo);
}

UpstreamState upstream_state(double m, const UpstreamData& data, const thermo::GasModel& gas,
                             GeometryKind kind, std::size_t panels) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InputError("mass flux must be positive");
  require_positive_data(data, gas, kind);
  panels = even_panels(panels);
  std::vector<double> t, w;
  simpson_nodes(panels, t, w);
  const Bounds b = level_bounds(data, gas, t);
  if (b.lo > b.hi) throw InfeasibleError("no subsonic parallel upstream state exists");
  const Pointwise pw{data, gas};
  const double m_max = flux_at(pw, kind, t, w, b.lo);
  const double m_min = flux_at(pw, kind, t, w, b.hi);

  UpstreamState st;
  st.data_ = data;
  st.gas_ = gas;
  st.kind_ = kind;
  st.m_ = m;
  st.m_max_ = m_max;
  st.panels_ = panels;

  double level;
  if (m > m_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "mass flux " << m << " exceeds the maximal subsonic upstream flux " << m_max;
    throw SonicExceeded(os.str(), m_max, m / m_max);
  } else if (m >= m_max) {
    level = b.lo;
    st.at_cap_ = true;
  } else if (m <= m_min) {
    std::ostringstream os;
    os.precision(17);
    os << "mass flux " << m << " is below the stagnation-limited flux " << m_min
       << "; the upstream profile would stall";
    throw InfeasibleError(os.str());
  } else {
    // flux decreases with the level
    auto G = [&](double lv) { return flux_at(pw, kind, t, w, lv) - m; };
    level = num::bisect_fast(G, b.lo, b.hi).x;
  }
  if (gas.homentropic()) {
    st.rho_hom_ = level;
    st.p_ = gas.law().p(level);
  } else {
    st.p_ = level;
  }

  // Cumulative stream function with Simpson per table cell.
  const std::size_t n = panels;
  st.t_.resize(n + 1);
  st.psi_.assign(n + 1, 0.0);
  st.dpsi_.resize(n + 1);
  auto f = [&](double tt) {
    const double weight = kind == GeometryKind::Axisymmetric ? tt : 1.0;
    return weight * pw.rho(tt, level) * pw.u(tt, level);
  };
  for (std::size_t k = 0; k <= n; ++k) {
    st.t_[k] = static_cast<double>(k) / static_cast<double>(n);
    st.dpsi_[k] = f(st.t_[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double h = st.t_[k + 1] - st.t_[k];
    st.psi_[k + 1] =
        st.psi_[k] + h / 6.0 * (st.dpsi_[k] + 4.0 * f(0.5 * (st.t_[k] + st.t_[k + 1])) + st.dpsi_[k + 1]);
  }
  const double scale = m / st.psi_[n];
  for (std::size_t k = 0; k <= n; ++k) {
    st.psi_[k] *= scale;
    st.dpsi_[k] *= scale;
  }
  st.psi_[n] = m;
  st.scale_ = scale;
  for (std::size_t k = 1; k <= n; ++k) {
    if (!(st.psi_[k] > st.psi_[k - 1])) throw InfeasibleError("upstream stream function is not increasing");
  }
  return st;
}

double UpstreamState::rho(double t) const {
  if (gas_.homentropic()) return rho_hom_;
  const double g = gas_.gamma();
  return std::pow(g * p_ / ((g - 1.0) * data_.S.value(t)), 1.0 / g);
}

double UpstreamState::u(double t) const {
  const double B = data_.B.value(t);
  double e;
  if (gas_.homentropic()) {
    e = gas_.law().enthalpy(rho_hom_);
  } else {
    const double g = gas_.gamma();
    e = g * p_ / ((g - 1.0) * rho(t));
  }
  return std::sqrt(std::max(0.0, 2.0 * (B - e)));
}

namespace {

double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

}  // namespace

double UpstreamState::psi(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return m_;
  const std::size_t n = t_.size() - 1;
  std::size_t k = std::min(static_cast<std::size_t>(t * static_cast<double>(n)), n - 1);
  return hermite(t_[k], t_[k + 1], psi_[k], psi_[k + 1], dpsi_[k], dpsi_[k + 1], t);
}

double UpstreamState::dpsi(double t) const {
  const double weight = kind_ == GeometryKind::Axisymmetric ? t : 1.0;
  return weight * rho(t) * u(t) * scale_;
}

double UpstreamState::label(double psi) const {
  const std::size_t n = t_.size() - 1;
  if (psi <= 0.0) {
    if (psi == 0.0) return 0.0;
    if (dpsi_[0] > 0.0) return psi / dpsi_[0];
    const double c = psi_[1] / (t_[1] * t_[1]);
    return -std::sqrt(-psi / c);
  }
  if (psi >= m_) {
    if (psi == m_) return 1.0;
    return 1.0 + (psi - m_) / dpsi_[n];
  }
  std::size_t k = static_cast<std::size_t>(std::upper_bound(psi_.begin(), psi_.end(), psi) - psi_.begin());
  k = std::clamp<std::size_t>(k, 1, n) - 1;
  auto g = [&](double t) {
    return hermite(t_[k], t_[k + 1], psi_[k], psi_[k + 1], dpsi_[k], dpsi_[k + 1], t) - psi;
  };
  return num::bisect_fast(g, t_[k], t_[k + 1]).x;
}

TransportValue transport_eval(double label, const UpstreamData& data, std::size_t* clamp_counter) {
  double excess = 0.0;
  if (label < 0.0) excess = -label;
  if (label > 1.0) excess = label - 1.0;
  if (excess > kLabelReject || std::isnan(label)) {
    std::ostringstream os;
    os << "streamline label " << label << " lies outside [0, 1]";
    throw SolverStateError(os.str());
  }
  if (excess > kLabelRoundoff && clamp_counter) ++*clamp_counter;
  const double t = std::clamp(label, 0.0, 1.0);
  return {data.B.value(t), data.S.value(t), data.B.d1(t), data.S.d1(t)};
}

double vorticity_source(double rho, double label, double r, const UpstreamState& up,
                        const UpstreamData& data, const thermo::GasModel& gas) {
  if (!(rho > 0.0)) throw DomainError("vorticity requires rho > 0");
  const TransportValue tv = transport_eval(label, data);
  const double t = std::clamp(label, 0.0, 1.0);
  double shear = rho * tv.dB;
  if (!gas.homentropic()) shear -= std::pow(rho, gas.gamma()) * tv.dS / gas.gamma();
  if (shear == 0.0) return 0.0;
  const double ju = up.rho(t) * up.u(t);
  if (up.kind() == GeometryKind::Planar) {
    if (!(ju >= 1e-14)) throw SolverStateError("degenerate upstream state: rho_- u_- below 1e-14");
    return -shear / ju;
  }
  // r / psi_-'(t) with psi_-'(t) = t rho_- u_-; the ratio r/t stays finite on the axis.
  if (!(ju >= 1e-14)) throw SolverStateError("degenerate upstream state: rho_- u_- below 1e-14");
  if (t <= 0.0) return 0.0;
  return -shear * r / (t * ju);
}

}  // namespace sll
