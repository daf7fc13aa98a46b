#pragma once

// Brute-force reference values: dense scans, bisection and fixed-panel quadrature, written
// directly from the defining relations and independent of the sll library.

#include <cstddef>
#include <functional>
#include <vector>

namespace sll_oracle {

// Full Euler with p = (gamma - 1)/gamma * S * rho^gamma and B = q^2/2 + S rho^(gamma - 1).
double density(double q, double B, double S, double gamma);
double flux_density(double q, double B, double S, double gamma);
double sound_speed_sq(double q, double B, double S, double gamma);

struct Peak {
  double q;
  double j;
};

// Maximum of rho(q) q over [0, sqrt(2B)]: scan on `points` nodes, then bisection on the slope sign.
Peak j_max(double B, double S, double gamma, std::size_t points = 1000000);

// Subsonic root of rho(q) q = j by scan + bisection to 1e-12 relative; returns the peak speed for j >= j_max.
double speed_from_flux(double j, double B, double S, double gamma, std::size_t points = 10000);

struct Critical {
  double rho_cr;
  double q_cr;
};

// q = c by scan + bisection.
Critical critical_full(double B, double S, double gamma, std::size_t points = 10000);

// Homentropic law given by p'(rho); h(rho) = int_1^rho p'(s)/s ds by composite Simpson.
struct Law {
  std::function<double(double)> dp;
  double rho_max = 1e6;
};
Law gamma_law(double kappa, double gamma);
Law isothermal(double kappa);
double enthalpy(const Law& law, double rho, std::size_t panels = 10000);
// p'(rho)/2 + h(rho) = B, scanning rho on a geometric grid.
Critical critical_hom(const Law& law, double B, std::size_t points = 2000);

// Parallel upstream state at constant pressure for polynomial B(t), S(t).
struct UpstreamResult {
  double p_minus;
  double flux;  // quadrature of the profile at p_minus
  std::vector<double> t, rho, u;
};
UpstreamResult upstream(double m, const std::vector<double>& B_coeffs, const std::vector<double>& S_coeffs,
                        double gamma, bool axisymmetric, std::size_t panels = 10000,
                        std::size_t scan = 2000);

// Quasi-one-dimensional choking estimate for uniform data: throat area fraction times the
// maximal flux per unit area (halved for the axisymmetric r dr normalization).
double quasi1d_mhat(double B, double S, double gamma, double throat_ratio, bool axisymmetric);

double polyval(const std::vector<double>& c, double t);

}  // namespace sll_oracle
