#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sll_oracle {

namespace {

// Runs until the midpoint no longer moves.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int k = 0; k < 400; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double simpson(F f, double a, double b, std::size_t panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  return s * h / 3.0;
}

}  // namespace

double polyval(const std::vector<double>& c, double t) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * t + c[k];
  return s;
}

double density(double q, double B, double S, double gamma) {
  const double h = B - 0.5 * q * q;
  if (h <= 0.0) return 0.0;
  return std::pow(h / S, 1.0 / (gamma - 1.0));
}

double flux_density(double q, double B, double S, double gamma) { return density(q, B, S, gamma) * q; }

double sound_speed_sq(double q, double B, double S, double gamma) {
  return (gamma - 1.0) * S * std::pow(density(q, B, S, gamma), gamma - 1.0);
}

Peak j_max(double B, double S, double gamma, std::size_t points) {
  const double qmax = std::sqrt(2.0 * B);
  std::size_t best = 0;
  double jb = -1.0;
  for (std::size_t k = 0; k <= points; ++k) {
    const double q = qmax * static_cast<double>(k) / static_cast<double>(points);
    const double j = flux_density(q, B, S, gamma);
    if (j > jb) {
      jb = j;
      best = k;
    }
  }
  const double dq = qmax / static_cast<double>(points);
  double lo = std::max(0.0, (static_cast<double>(best) - 1.0) * dq);
  double hi = std::min(qmax, (static_cast<double>(best) + 1.0) * dq);
  // d(rho q)/dq = rho + q rho', with rho' from differentiating S rho^(gamma-1) = B - q^2/2
  auto slope = [&](double q) {
    const double rho = density(q, B, S, gamma);
    return rho - q * q * std::pow(rho, 2.0 - gamma) / ((gamma - 1.0) * S);
  };
  const double q = bisect([&](double x) { return -slope(x); }, lo, hi);
  return {q, flux_density(q, B, S, gamma)};
}

double speed_from_flux(double j, double B, double S, double gamma, std::size_t points) {
  const Peak pk = j_max(B, S, gamma, std::max<std::size_t>(points, 1000));
  if (j >= pk.j) return pk.q;
  if (j <= 0.0) return 0.0;
  double lo = 0.0, hi = pk.q;
  for (std::size_t k = 1; k <= points; ++k) {
    const double q = pk.q * static_cast<double>(k) / static_cast<double>(points);
    if (flux_density(q, B, S, gamma) >= j) {
      hi = q;
      lo = pk.q * static_cast<double>(k - 1) / static_cast<double>(points);
      break;
    }
  }
  return bisect([&](double q) { return flux_density(q, B, S, gamma) - j; }, lo, hi);
}

Critical critical_full(double B, double S, double gamma, std::size_t points) {
  const double qmax = std::sqrt(2.0 * B);
  auto g = [&](double q) { return q * q - sound_speed_sq(q, B, S, gamma); };
  double lo = 0.0, hi = qmax;
  for (std::size_t k = 1; k <= points; ++k) {
    const double q = qmax * static_cast<double>(k) / static_cast<double>(points);
    if (g(q) >= 0.0) {
      hi = q;
      lo = qmax * static_cast<double>(k - 1) / static_cast<double>(points);
      break;
    }
  }
  const double q = bisect(g, lo, hi);
  return {density(q, B, S, gamma), q};
}

Law gamma_law(double kappa, double gamma) {
  return {[=](double r) { return kappa * gamma * std::pow(r, gamma - 1.0); }};
}

Law isothermal(double kappa) {
  return {[=](double) { return kappa; }};
}

double enthalpy(const Law& law, double rho, std::size_t panels) {
  if (rho == 1.0) return 0.0;
  // Substitute s = e^x so the 1/s weight stays smooth near the vacuum end.
  return simpson([&](double x) { return law.dp(std::exp(x)); }, 0.0, std::log(rho), panels);
}

Critical critical_hom(const Law& law, double B, std::size_t points) {
  auto g = [&](double r) { return 0.5 * law.dp(r) + enthalpy(law, r) - B; };
  const double a = std::log(1e-12), b = std::log(law.rho_max);
  double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
  double prev = std::exp(a);
  double gprev = g(prev);
  for (std::size_t k = 1; k <= points; ++k) {
    const double r = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(points));
    const double gr = g(r);
    if ((gprev < 0.0) != (gr < 0.0)) {
      lo = prev;
      hi = r;
      break;
    }
    prev = r;
    gprev = gr;
  }
  if (std::isnan(lo)) throw std::domain_error("no critical state in the scanned density range");
  const double r = bisect(g, lo, hi);
  return {r, std::sqrt(law.dp(r))};
}

UpstreamResult upstream(double m, const std::vector<double>& Bc, const std::vector<double>& Sc,
                        double gamma, bool axi, std::size_t panels, std::size_t scan) {
  auto rho_at = [&](double p, double t) {
    return std::pow(gamma * p / ((gamma - 1.0) * polyval(Sc, t)), 1.0 / gamma);
  };
  auto u_at = [&](double p, double t) {
    const double r = rho_at(p, t);
    const double h = polyval(Sc, t) * std::pow(r, gamma - 1.0);
    return std::sqrt(std::max(0.0, 2.0 * (polyval(Bc, t) - h)));
  };
  auto flux = [&](double p) {
    return simpson([&](double t) { return (axi ? t : 1.0) * rho_at(p, t) * u_at(p, t); }, 0.0, 1.0, panels);
  };
  // Admissible pressures: subsonic on every streamline, positive speed on every streamline.
  double p_lo = 0.0, p_hi = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= scan; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(scan);
    const double B = polyval(Bc, t), S = polyval(Sc, t);
    const Critical c = critical_full(B, S, gamma, 2000);
    p_lo = std::max(p_lo, (gamma - 1.0) / gamma * S * std::pow(c.rho_cr, gamma));
    const double rho0 = std::pow(B / S, 1.0 / (gamma - 1.0));
    p_hi = std::min(p_hi, (gamma - 1.0) / gamma * S * std::pow(rho0, gamma));
  }
  if (!(p_hi > p_lo)) throw std::domain_error("no admissible upstream pressure");
  const double f_lo = flux(p_lo), f_hi = flux(p_hi);
  if (m > f_lo || m < f_hi) throw std::domain_error("mass flux outside the admissible upstream range");
  double lo = p_lo, hi = p_hi;
  for (std::size_t k = 1; k <= 200; ++k) {
    const double p = p_lo + (p_hi - p_lo) * static_cast<double>(k) / 200.0;
    if (flux(p) <= m) {
      hi = p;
      lo = p_lo + (p_hi - p_lo) * static_cast<double>(k - 1) / 200.0;
      break;
    }
  }
  UpstreamResult out;
  out.p_minus = bisect([&](double p) { return m - flux(p); }, lo, hi);
  out.flux = flux(out.p_minus);
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    out.t.push_back(t);
    out.rho.push_back(rho_at(out.p_minus, t));
    out.u.push_back(u_at(out.p_minus, t));
  }
  return out;
}

double quasi1d_mhat(double B, double S, double gamma, double throat_ratio, bool axi) {
  const double j = j_max(B, S, gamma).j;
  return axi ? 0.5 * throat_ratio * throat_ratio * j : throat_ratio * j;
}

}  // namespace sll_oracle
