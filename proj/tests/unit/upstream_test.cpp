#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "sll/errors.hpp"
#include "sll/upstream.hpp"

using namespace sll;
using doctest::Approx;

TEST_SUITE("upstream") {

TEST_CASE("uniform planar state") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto up = upstream_state(0.3, UpstreamData::uniform(1.0, 1.0), gas);
  const auto ref = sll_oracle::upstream(0.3, {1.0}, {1.0}, 2.0, false);
  CHECK(up.p_minus() == Approx(ref.p_minus).epsilon(1e-9));
  CHECK(up.p_minus() == Approx(0.451397).epsilon(1e-6));
  const double q = sll_oracle::speed_from_flux(0.3, 1.0, 1.0, 2.0);
  CHECK(up.u(0.5) == Approx(q).epsilon(1e-9));
  CHECK(up.rho(0.2) == Approx(sll_oracle::density(q, 1.0, 1.0, 2.0)).epsilon(1e-9));
  CHECK(up.psi(1.0) == Approx(0.3).epsilon(1e-12));
  CHECK(up.label(0.15) == Approx(0.5).epsilon(1e-9));
  CHECK(up.max_flux() == Approx(sll_oracle::j_max(1.0, 1.0, 2.0).j).epsilon(1e-9));
  CHECK_THROWS_AS(upstream_state(0.6, UpstreamData::uniform(1.0, 1.0), gas), SonicExceeded);
}

TEST_CASE("sheared planar state against the oracle") {
  const auto gas = thermo::GasModel::full_euler(1.4);
  UpstreamData d{Curve::polynomial({1.0, 0.2, -0.1}), Curve::polynomial({1.0, -0.1})};
  const auto up = upstream_state(0.46, d, gas, GeometryKind::Planar, 512);
  const auto ref = sll_oracle::upstream(0.46, {1.0, 0.2, -0.1}, {1.0, -0.1}, 1.4, false);
  CHECK(up.p_minus() == Approx(ref.p_minus).epsilon(1e-7));
  for (std::size_t k = 0; k < ref.t.size(); k += ref.t.size() / 7) {
    CHECK(up.u(ref.t[k]) == Approx(ref.u[k]).epsilon(1e-6));
    CHECK(up.rho(ref.t[k]) == Approx(ref.rho[k]).epsilon(1e-6));
  }
  // label inverts psi
  for (double t : {0.1, 0.37, 0.8}) CHECK(up.label(up.psi(t)) == Approx(t).epsilon(1e-9));
}

TEST_CASE("axisymmetric state carries r dr flux") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto up = upstream_state(0.2, UpstreamData::uniform(1.0, 1.0), gas, GeometryKind::Axisymmetric);
  const double q = sll_oracle::speed_from_flux(0.4, 1.0, 1.0, 2.0);
  CHECK(up.u(0.3) == Approx(q).epsilon(1e-9));
  CHECK(up.psi(0.5) == Approx(0.2 * 0.25).epsilon(1e-9));
  CHECK(up.max_flux() == Approx(0.5 * sll_oracle::j_max(1.0, 1.0, 2.0).j).epsilon(1e-9));
  UpstreamData d{Curve::polynomial({1.0, 0.0, 0.05}), Curve::polynomial({1.0, 0.0, -0.05})};
  const auto ups = upstream_state(0.15, d, gas, GeometryKind::Axisymmetric, 512);
  const auto ref = sll_oracle::upstream(0.15, {1.0, 0.0, 0.05}, {1.0, 0.0, -0.05}, 2.0, true);
  CHECK(ups.p_minus() == Approx(ref.p_minus).epsilon(1e-7));
}

TEST_CASE("homentropic state") {
  const auto gas = thermo::GasModel::homentropic(thermo::PressureLaw::gamma_law(0.5, 2.0));
  const auto up = upstream_state(0.3, UpstreamData::uniform(1.0), gas);
  // gamma law with kappa = 0.5 is full Euler with S = 1 and B shifted by S
  const double q = sll_oracle::speed_from_flux(0.3, 2.0, 1.0, 2.0);
  CHECK(up.u(0.5) == Approx(q).epsilon(1e-9));
}

TEST_CASE("admissibility report") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  auto rep = check_upstream(UpstreamData::uniform(1.0, 1.0), gas, GeometryKind::Planar);
  CHECK(rep.positive);
  CHECK(rep.sign_conditions);
  rep = check_upstream(UpstreamData{Curve::polynomial({0.1, -0.2}), Curve::constant(1.0)}, gas,
                       GeometryKind::Planar);
  CHECK_FALSE(rep.positive);
  CHECK(rep.inf_B == Approx(-0.1));
  const auto iso = thermo::GasModel::homentropic(thermo::PressureLaw::isothermal(1.0));
  rep = check_upstream(UpstreamData::uniform(-5.0), iso, GeometryKind::Planar);
  CHECK(rep.positive);
  CHECK(rep.b_min_unbounded);
  rep = check_upstream(UpstreamData{Curve::polynomial({1.0, 0.1}), Curve::constant(1.0)}, gas,
                       GeometryKind::Axisymmetric);
  CHECK(rep.dB_axis == Approx(0.1));
  CHECK_FALSE(rep.sign_conditions);
}

TEST_CASE("transport clamps small label excursions") {
  UpstreamData d{Curve::polynomial({1.0, 0.1}), Curve::constant(1.0)};
  std::size_t clamps = 0;
  CHECK(transport_eval(1.0 + 1e-10, d, &clamps).B == Approx(1.1));
  CHECK(clamps == 0);
  CHECK(transport_eval(-1e-6, d, &clamps).B == Approx(1.0));
  CHECK(clamps == 1);
  CHECK_THROWS_AS(transport_eval(1.01, d, &clamps), SolverStateError);
}

TEST_CASE("vorticity carried by a streamline") {
  const auto gas = thermo::GasModel::full_euler(2.0);
  UpstreamData d{Curve::polynomial({1.0, 0.1}), Curve::constant(1.0)};
  const auto up = upstream_state(0.3, d, gas);
  for (double L : {0.2, 0.5, 0.9}) {
    const double rho_u = up.rho(L) * up.u(L);
    // omega = -rho B'(L) / (rho_- u_-)(L) with S constant
    CHECK(vorticity_source(1.0, L, 0.0, up, d, gas) == Approx(-0.1 / rho_u).epsilon(1e-12));
    CHECK(vorticity_source(0.5, L, 0.0, up, d, gas) == Approx(-0.05 / rho_u).epsilon(1e-12));
  }
  // rho = 1, B' = 0.1, rho_- u_- = 0.5 gives -0.2
  const double L = 0.5;
  CHECK(vorticity_source(1.0, L, 0.0, up, d, gas) * up.rho(L) * up.u(L) / 0.5 == Approx(-0.2).epsilon(1e-12));
  CHECK(vorticity_source(1.0, 0.4, 0.0, upstream_state(0.3, UpstreamData::uniform(1.0, 1.0), gas),
                         UpstreamData::uniform(1.0, 1.0), gas) == 0.0);
}

}  // TEST_SUITE
