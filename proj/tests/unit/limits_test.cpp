#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sll/errors.hpp"
#include "sll/limits.hpp"
#include "sll/solver.hpp"

using namespace sll;
using doctest::Approx;

namespace {

FlowField uniform_flow(GeometryKind kind, double m) {
  const auto gas = thermo::GasModel::full_euler(2.0);
  const auto g = build_grid(Nozzle::straight(kind), 32, 16, -4.0, 4.0);
  return picard_solve(g, UpstreamData::uniform(1.0, 1.0), gas, m).flow;
}

}  // namespace

TEST_SUITE("limits") {

TEST_CASE("uniform flow has no residuals") {
  for (auto kind : {GeometryKind::Planar, GeometryKind::Axisymmetric}) {
    const auto f = uniform_flow(kind, 0.15);
    const auto fam = default_test_family(f.layout);
    CHECK(fam.size() >= 9);
    const auto w = weak_residuals(f, fam);
    CHECK(w.mass < 1e-14);
    CHECK(w.max_momentum() < 1e-13);
    REQUIRE(w.energy.has_value());
    CHECK(*w.energy < 1e-13);
    const auto win = Window::middle(f.layout);
    CHECK(curl_tv(f, win) < 1e-12);
    CHECK(curl_defect(f, win) < 1e-12);
    CHECK(bernoulli_gradient_check(f) < 1e-12);
    CHECK(boundary_trace(f).max() < 1e-13);
    const auto b = field_bounds(f, win);
    CHECK(b.inf_S == Approx(1.0));
    CHECK(b.sup_B == Approx(1.0));
  }
}

TEST_CASE("test bumps") {
  TestBump b{0.0, 1.0, 0.5, 0.25};
  CHECK(b.value(0.0, 0.5) == Approx(1.0));
  CHECK(b.value(1.0, 0.5) == 0.0);
  CHECK(b.value(0.0, 0.2) == 0.0);
  CHECK(b.value(0.5, 0.5) > 0.0);
}

TEST_CASE("perturbed fields are detected") {
  auto f = uniform_flow(GeometryKind::Planar, 0.3);
  const auto win = Window::middle(f.layout);
  for (std::size_t n = 0; n < f.size(); ++n) f.u2[n] += 0.01 * std::sin(3.0 * f.layout.y[n]) * std::cos(f.layout.xi[n / f.layout.nsig()]);
  const auto w = weak_residuals(f, default_test_family(f.layout));
  CHECK(w.mass > 1e-4);
  CHECK(curl_defect(f, win) > 1e-4);
  auto g = uniform_flow(GeometryKind::Planar, 0.3);
  const std::size_t j0 = 0;
  for (std::size_t i = 0; i < g.layout.nxi(); ++i) g.u2[g.layout.idx(i, j0)] = 0.05;
  CHECK(boundary_trace(g).lower > 1e-3);
  CHECK(boundary_trace(g).upper < 1e-13);
}

TEST_CASE("concentration statistic") {
  std::vector<VelocitySample> s;
  s.push_back({{0.3, 0.0}, 0.25});
  s.push_back({{0.3, 0.0}, 0.75});
  auto c = concentration(s, thermo::GasModel::full_euler(2.0), 1.0, 1.0);
  CHECK(c.pairing_stat == 0.0);
  CHECK(c.speed_variance == Approx(0.0).scale(1.0));
  s = {{{0.2, 0.0}, 0.5}, {{0.4, 0.0}, 0.5}};
  c = concentration(s, thermo::GasModel::full_euler(2.0), 1.0, 1.0);
  // sum over ordered pairs of w_a w_b I(u_a, u_b)
  CHECK(c.pairing_stat == Approx(2 * 0.25 * 0.0344).epsilon(1e-10));
  CHECK(c.speed_variance == Approx(0.01).epsilon(1e-12));
  const auto f = uniform_flow(GeometryKind::Planar, 0.3);
  std::vector<const FlowField*> seq{&f, &f};
  std::vector<double> wts{0.5, 0.5};
  CHECK(sequence_concentration(seq, wts, thermo::GasModel::full_euler(2.0)).pairing_stat == 0.0);
}

TEST_CASE("diagnostic bundle") {
  const auto f = uniform_flow(GeometryKind::Planar, 0.3);
  const auto d = diagnose(f, thermo::GasModel::full_euler(2.0), &f);
  CHECK(d.weak.mass < 1e-14);
  REQUIRE(d.concentration.has_value());
  CHECK(d.concentration->pairing_stat == 0.0);
  CHECK(d.bounds.max_mach == Approx(f.max_mach()));
  CHECK_FALSE(d.b_min_unbounded);
  CHECK_FALSE(diagnose(f, thermo::GasModel::full_euler(2.0)).concentration.has_value());
}

TEST_CASE("sweep brackets the straight channel limit") {
  ProblemSetup s;
  s.nozzle = Nozzle::straight(GeometryKind::Planar);
  s.upstream = UpstreamData::uniform(1.0, 1.0);
  s.gas = thermo::GasModel::full_euler(2.0);
  s.nx = 16;
  s.ns = 8;
  s.x1_min = -4.0;
  s.x1_max = 4.0;
  SweepOptions opt;
  opt.m_tol = 1e-4;
  const auto rep = sweep_to_sonic(s, 0.3, opt);
  const double jm = sll_oracle::j_max(1.0, 1.0, 2.0).j;
  CHECK(rep.bracket_achieved);
  CHECK(rep.m_lo <= jm);
  CHECK(rep.m_hi >= jm - 1e-4);
  CHECK(rep.m_hi - rep.m_lo <= 1e-4);
  CHECK(rep.last_accepted_max_mach <= 0.99);
  CHECK(rep.upstream_max_flux == Approx(jm).epsilon(1e-9));
  CHECK(rep.accepted.size() >= 2);
  for (std::size_t k = 1; k < rep.entries.size(); ++k) CHECK(rep.entries[k].m > rep.entries[k - 1].m);
  CHECK(to_string(EntryStatus::SonicExceeded) == "sonic_exceeded");
  CHECK_THROWS_AS(sweep_to_sonic(s, 0.6, opt), InfeasibleError);
}

}  // TEST_SUITE
