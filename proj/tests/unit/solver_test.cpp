#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "sll/errors.hpp"
#include "sll/solver.hpp"

using namespace sll;
using doctest::Approx;
using std::numbers::pi;

namespace {

using F2 = std::function<double(double, double)>;

// 4th-order central differences of an analytic function.
double dx4(const F2& f, double x, double y, double h = 1e-3) {
  return (-f(x + 2 * h, y) + 8 * f(x + h, y) - 8 * f(x - h, y) + f(x - 2 * h, y)) / (12 * h);
}
double dy4(const F2& f, double x, double y, double h = 1e-3) {
  return (-f(x, y + 2 * h) + 8 * f(x, y + h) - 8 * f(x, y - h) + f(x, y - 2 * h)) / (12 * h);
}

// max nodal error of the elliptic solve against psi for -div(grad psi / rho) = omega
double mms_error(const Nozzle& noz, std::size_t ns, double x0, double x1, const F2& psi,
                 const F2& rho, double m) {
  const auto g = build_grid(noz, ns * static_cast<std::size_t>(std::lround((x1 - x0))), ns, x0, x1);
  F2 fx = [&](double x, double y) { return dx4(psi, x, y) / rho(x, y); };
  F2 fy = [&](double x, double y) { return dy4(psi, x, y) / rho(x, y); };
  std::vector<double> r(g.size()), w(g.size()), inlet(g.nsig());
  for (std::size_t i = 0; i < g.nxi(); ++i)
    for (std::size_t j = 0; j < g.nsig(); ++j) {
      const double x = g.xi(i), y = g.y(i, j);
      r[g.idx(i, j)] = rho(x, y);
      w[g.idx(i, j)] = -(dx4(fx, x, y) + dy4(fy, x, y));
    }
  for (std::size_t j = 0; j < g.nsig(); ++j) inlet[j] = psi(x0, g.y(0, j));
  EllipticOptions opt;
  opt.cg_tol = 1e-13;
  const auto sol = elliptic_solve(g, r, w, m, inlet, opt);
  double e = 0.0;
  for (std::size_t i = 0; i < g.nxi(); ++i)
    for (std::size_t j = 0; j < g.nsig(); ++j)
      e = std::max(e, std::fabs(sol[g.idx(i, j)] - psi(g.xi(i), g.y(i, j))));
  return e;
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("manufactured solution on a curved channel") {
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.2, 0.0, 0.7);
  const double m = 0.3;
  auto f = [&](double x) { return noz.upper().value(x); };
  F2 psi = [&](double x, double y) {
    const double s = y / f(x);
    return m * s + 0.05 * std::sin(pi * s) * std::exp(-x * x);
  };
  F2 rho = [](double x, double y) { return 1.0 + 0.1 * std::tanh(x) * y; };
  const double e1 = mms_error(noz, 8, -4.0, 4.0, psi, rho, m);
  const double e2 = mms_error(noz, 16, -4.0, 4.0, psi, rho, m);
  const double e3 = mms_error(noz, 32, -4.0, 4.0, psi, rho, m);
  MESSAGE("errors " << e1 << " " << e2 << " " << e3);
  CHECK(std::log2(e2 / e3) > 1.8);
  CHECK(std::log2(e2 / e3) < 2.3);
  CHECK(e3 < 1e-3);
}

TEST_CASE("uniform pipe flow has psi = m r^2") {
  const auto g = build_grid(Nozzle::straight(GeometryKind::Axisymmetric), 16, 16, -2.0, 2.0);
  std::vector<double> rho(g.size(), 0.9), w(g.size(), 0.0), inlet(g.nsig());
  const double m = 0.2;
  for (std::size_t j = 0; j < g.nsig(); ++j) inlet[j] = m * g.y(0, j) * g.y(0, j);
  const auto psi = elliptic_solve(g, rho, w, m, inlet);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double r = g.layout().y[n];
    CHECK(psi[n] == Approx(m * r * r).epsilon(1e-8).scale(m));
  }
}

TEST_CASE("solver state errors on bad input") {
  const auto g = build_grid(Nozzle::straight(GeometryKind::Planar), 8, 8, 0.0, 1.0);
  std::vector<double> rho(g.size(), 1.0), w(g.size(), 0.0), inlet(g.nsig(), 0.0);
  rho[7] = -1.0;
  CHECK_THROWS_AS(elliptic_solve(g, rho, w, 0.1, inlet), SolverStateError);
  std::vector<double> short_inlet(2, 0.0);
  rho[7] = 1.0;
  CHECK_THROWS(elliptic_solve(g, rho, w, 0.1, short_inlet));
}

}  // TEST_SUITE

TEST_SUITE("picard") {

TEST_CASE("uniform straight channel converges at once") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto g = build_grid(Nozzle::straight(GeometryKind::Planar), 32, 16, -5.0, 5.0);
  const auto sol = picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, 0.3);
  CHECK(sol.iterations <= 5);
  const double q = sll_oracle::speed_from_flux(0.3, 1.0, 1.0, 2.0);
  const double rho = sll_oracle::density(q, 1.0, 1.0, 2.0);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(sol.flow.q[n] == Approx(q).epsilon(1e-10));
    CHECK(sol.flow.rho[n] == Approx(rho).epsilon(1e-10));
    CHECK(std::fabs(sol.flow.u2[n]) < 1e-10);
  }
  CHECK(sol.max_mach == Approx(q / std::sqrt(sll_oracle::sound_speed_sq(q, 1.0, 1.0, 2.0))).epsilon(1e-10));
  CHECK(sol.conservation_defect < 1e-12);
}

TEST_CASE("contraction accelerates the flow and conserves mass") {
  const auto gas = thermo::GasModel::full_euler(1.4);
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0);
  const auto g = build_grid(noz, 64, 16, -8.0, 8.0);
  const auto sol = picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, 0.2);
  CHECK(sol.conservation_defect < 1e-8);
  const double q_in = sol.flow.q[g.idx(0, 8)];
  const double q_out = sol.flow.q[g.idx(64, 8)];
  CHECK(q_out > q_in / 0.75);
  // downstream state is the quasi one-dimensional state at width 0.7
  const double qd = sll_oracle::speed_from_flux(0.2 / 0.7, 1.0, 1.0, 1.4);
  CHECK(q_out == Approx(qd).epsilon(1e-3));
}

TEST_CASE("supersonic demand is rejected") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto g = build_grid(Nozzle::straight(GeometryKind::Planar), 16, 8, -2.0, 2.0);
  CHECK_THROWS_AS(picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, 0.6), SonicExceeded);
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.5, 0.0, 1.0);
  const auto gc = build_grid(noz, 48, 12, -8.0, 8.0);
  bool sonic = false;
  try {
    picard_solve(gc, UpstreamData::uniform(1.0, 1.0), gas, 0.4);
  } catch (const SonicExceeded& e) {
    sonic = true;
    CHECK(e.j_max() > 0.0);
  } catch (const DivergenceError&) {
    sonic = true;
  }
  CHECK(sonic);
}

TEST_CASE("axisymmetric straight pipe") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto g = build_grid(Nozzle::straight(GeometryKind::Axisymmetric), 16, 16, -3.0, 3.0);
  const auto sol = picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, 0.15);
  const double q = sll_oracle::speed_from_flux(0.3, 1.0, 1.0, 2.0);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double r = g.layout().y[n];
    CHECK(sol.flow.psi[n] == Approx(0.15 * r * r).epsilon(1e-9).scale(0.15));
    CHECK(sol.flow.q[n] == Approx(q).epsilon(1e-9));
  }
}

}  // TEST_SUITE
