#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sll/errors.hpp"
#include "sll/thermo.hpp"

using namespace sll;
using namespace sll::thermo;
using doctest::Approx;

TEST_SUITE("thermo") {

TEST_CASE("critical speed closed form") {
  CHECK(critical_speed_full(3.0, 2.0) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(critical_speed_full(1.0, 1.4) == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(critical_speed_full(0.5, 5.0 / 3.0) == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(critical_speed_full(0.0, 1.4), DomainError);
  // agrees with the scan oracle
  const auto c = sll_oracle::critical_full(1.0, 1.0, 2.0);
  CHECK(critical_speed_full(1.0, 2.0) == Approx(c.q_cr).epsilon(1e-10));
}

TEST_CASE("density and pressure from speed") {
  CHECK(density_from_speed(0.0, 1.0, 1.0, 2.0) == Approx(1.0));
  CHECK(density_from_speed(critical_speed_full(1.0, 2.0), 1.0, 1.0, 2.0) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(density_from_speed(0.4, 1.0, 1.0, 2.0) == Approx(0.92).epsilon(1e-14));
  CHECK(density_from_speed(0.4, 1.0, 1.0, 2.0) == Approx(sll_oracle::density(0.4, 1.0, 1.0, 2.0)).epsilon(1e-14));
  // p = (gamma-1)/gamma S rho^gamma
  CHECK(pressure_from_speed(0.0, 1.0, 1.0, 2.0) == Approx(0.5).epsilon(1e-14));
  CHECK(pressure_from_speed(0.4, 1.0, 1.0, 2.0) == Approx(0.5 * 0.92 * 0.92).epsilon(1e-14));
  CHECK(pressure_from_speed(std::sqrt(2.0), 1.0, 1.0, 2.0) == 0.0);
  CHECK(density_from_speed(std::sqrt(2.0), 1.0, 1.0, 2.0) == 0.0);
  CHECK_THROWS_AS(density_from_speed(1.5, 1.0, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(density_from_speed(0.1, 1.0, 0.0, 2.0), DomainError);
}

TEST_CASE("sound speed and mach") {
  CHECK(sound_speed(1.0, 1.0, 1.4) == Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(sound_speed(PressureLaw::gamma_law(1.0, 2.0), 0.5) == Approx(1.0));
  CHECK(sound_speed(PressureLaw::isothermal(4.0), 0.3) == Approx(2.0));
  CHECK(mach(0.7, 0.7) == 1.0);
  CHECK(mach(0.0, 0.7) == 0.0);
  CHECK(mach(0.4, sound_speed(0.92, 0.2116, 2.0)) == Approx(0.4 / std::sqrt(2 * 0.2116 / 0.92)).epsilon(1e-14));
  CHECK_THROWS_AS(sound_speed(0.0, 1.0, 1.4), DomainError);
  CHECK_THROWS_AS(mach(0.1, 0.0), DomainError);
}

TEST_CASE("mass flux density and its slope") {
  auto f0 = mass_flux_density(0.0, 1.0, 1.0, 2.0);
  CHECK(f0.j == 0.0);
  CHECK(f0.dj_dq == Approx(1.0));
  const double qc = critical_speed_full(1.0, 2.0);
  CHECK(std::abs(mass_flux_density(qc, 1.0, 1.0, 2.0).dj_dq) < 1e-14);
  auto f = mass_flux_density(0.4, 1.0, 1.0, 2.0);
  CHECK(f.j == Approx(0.368).epsilon(1e-14));
  const double h = 1e-6;
  const double fd = (sll_oracle::flux_density(0.4 + h, 1.0, 1.0, 2.0) - sll_oracle::flux_density(0.4 - h, 1.0, 1.0, 2.0)) / (2 * h);
  CHECK(f.dj_dq == Approx(fd).epsilon(1e-8));
  CHECK(mass_flux_density(0.9, 1.0, 1.0, 2.0).dj_dq < 0.0);
}

TEST_CASE("critical state and j_max against scan") {
  const auto cs = critical_state_full(1.0, 1.0, 2.0);
  const auto pk = sll_oracle::j_max(1.0, 1.0, 2.0);
  CHECK(cs.j_max == Approx(pk.j).epsilon(1e-12));
  CHECK(cs.j_max == Approx(0.544331).epsilon(1e-6));
  CHECK(cs.q_cr == Approx(pk.q).epsilon(1e-6));
  const double rho = density_from_speed(cs.q_cr, 1.0, 1.0, 2.0);
  CHECK(mach(cs.q_cr, sound_speed(rho, pressure_from_speed(cs.q_cr, 1.0, 1.0, 2.0), 2.0)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("subsonic inversion") {
  CHECK(speed_from_mass_flux(0.0, 1.0, 1.0, 2.0) == 0.0);
  const auto cs = critical_state_full(1.0, 1.0, 2.0);
  CHECK(speed_from_mass_flux(cs.j_max, 1.0, 1.0, 2.0) == Approx(cs.q_cr).epsilon(1e-12));
  const double q = speed_from_mass_flux(0.3, 1.0, 1.0, 2.0);
  CHECK(q == Approx(sll_oracle::speed_from_flux(0.3, 1.0, 1.0, 2.0)).epsilon(1e-12));
  CHECK(q == Approx(0.31577).epsilon(2e-4));
  CHECK(std::abs(q - q * q * q / 2 - 0.3) < 1e-13);
  CHECK_THROWS_AS(speed_from_mass_flux(-0.1, 1.0, 1.0, 2.0), DomainError);
  try {
    speed_from_mass_flux(0.6, 1.0, 1.0, 2.0);
    FAIL("expected SonicExceeded");
  } catch (const SonicExceeded& e) {
    CHECK(e.j_max() == Approx(cs.j_max).epsilon(1e-14));
  }
  // monotone in j
  double prev = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double qk = speed_from_mass_flux(cs.j_max * k / 200.0, 1.0, 1.0, 2.0);
    CHECK(qk > prev);
    prev = qk;
  }
}

TEST_CASE("round trip of the state algebra") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const double B = 0.1 + 9.9 * U(rng), S = 0.1 + 9.9 * U(rng), g = 1.0 + 1e-3 + (2.0 - 1e-3) * U(rng);
    const double q = U(rng) * critical_speed_full(B, g);
    const double rho = density_from_speed(q, B, S, g), p = pressure_from_speed(q, B, S, g);
    CHECK(bernoulli(rho, p, q, g) == Approx(B).epsilon(1e-10));
    CHECK(entropy(rho, p, g) == Approx(S).epsilon(1e-10));
    const double j = mass_flux_density(q, B, S, g).j;
    CHECK(speed_from_mass_flux(j, B, S, g) == Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("pairing functional") {
  const std::vector<double> a{0.2, 0.0}, b{0.4, 0.0}, c{0.3, 0.0}, d{0.0, 0.3};
  CHECK(pairing(a, a, 1.0, 1.0, 2.0) == 0.0);
  CHECK(pairing(a, b, 1.0, 1.0, 2.0) == Approx(0.0344).epsilon(1e-13));
  CHECK(pairing(b, a, 1.0, 1.0, 2.0) == Approx(pairing(a, b, 1.0, 1.0, 2.0)).epsilon(1e-15));
  CHECK(pairing(c, d, 1.0, 1.0, 2.0) == Approx(0.955 * 0.18).epsilon(1e-13));
  const std::vector<double> fast{0.9, 0.0};
  CHECK_THROWS_AS(pairing(a, fast, 1.0, 1.0, 2.0), DomainError);
}

TEST_CASE("homentropic enthalpy and floor") {
  const auto g2 = PressureLaw::gamma_law(1.0, 2.0);
  CHECK(enthalpy_hom(g2, 1.0) == 0.0);
  CHECK(enthalpy_hom(g2, 2.0) == Approx(2.0));
  const auto iso = PressureLaw::isothermal(1.0);
  CHECK(enthalpy_hom(iso, std::exp(1.0)) == Approx(1.0).epsilon(1e-15));
  CHECK(b_min(g2) == Approx(-2.0));
  CHECK(b_min(iso) == kMinusInfinity);
  CHECK(b_min(PressureLaw::gamma_law(1.0, 1.4)) == Approx(-3.5));
  CHECK(enthalpy_hom(g2, 2.0) == Approx(sll_oracle::enthalpy(sll_oracle::gamma_law(1.0, 2.0), 2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(enthalpy_hom(g2, 0.0), DomainError);
}

TEST_CASE("homentropic critical state") {
  const auto g2 = PressureLaw::gamma_law(1.0, 2.0);
  auto cs = critical_state_hom(g2, 1.0);
  CHECK(cs.rho_cr == Approx(1.0).epsilon(1e-12));
  CHECK(cs.q_cr == Approx(std::sqrt(2.0)).epsilon(1e-12));
  cs = critical_state_hom(g2, 4.0);
  CHECK(cs.rho_cr == Approx(2.0).epsilon(1e-12));
  CHECK(cs.q_cr == Approx(2.0).epsilon(1e-12));
  const auto o = sll_oracle::critical_hom(sll_oracle::gamma_law(1.0, 2.0), 4.0);
  CHECK(cs.rho_cr == Approx(o.rho_cr).epsilon(1e-9));
  CHECK(critical_state_hom(PressureLaw::isothermal(1.0), 0.5).rho_cr == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(critical_state_hom(g2, -2.5), DomainError);
  // gamma law equals the full Euler relations with S = kappa gamma/(gamma - 1)
  const auto g14 = PressureLaw::gamma_law(0.7, 1.4);
  const double S = 0.7 * 1.4 / 0.4, B = 1.3;
  // h is anchored at rho = 1, so the full Bernoulli constant is shifted by S
  const auto hom2 = critical_state_hom(g14, B);
  const auto full2 = critical_state_full(B + S, S, 1.4);
  CHECK(hom2.q_cr == Approx(full2.q_cr).epsilon(1e-11));
  CHECK(hom2.rho_cr == Approx(full2.rho_cr).epsilon(1e-11));
}

TEST_CASE("homentropic density from Bernoulli") {
  const auto g2 = PressureLaw::gamma_law(1.0, 2.0);
  CHECK(density_from_bernoulli_hom(g2, 0.0, 0.0) == Approx(1.0).epsilon(1e-12));
  CHECK(density_from_bernoulli_hom(g2, 2.0, 4.0) == Approx(2.0).epsilon(1e-12));
  CHECK(density_from_bernoulli_hom(PressureLaw::isothermal(1.0), 1.0, 0.5) == Approx(1.0).epsilon(1e-12));
  CHECK(density_from_bernoulli_hom(g2, 0.5, 1.0) < density_from_bernoulli_hom(g2, 0.4, 1.0));
  CHECK_THROWS_AS(density_from_bernoulli_hom(g2, 3.0, 1.0), DomainError);
}

TEST_CASE("tabulated law") {
  // p = rho^2 sampled; enthalpy and floor follow the gamma law with kappa = 1, gamma = 2
  std::vector<double> r, p;
  for (int k = 0; k <= 400; ++k) {
    r.push_back(0.01 * k);
    p.push_back(r.back() * r.back());
  }
  const auto law = PressureLaw::tabulated(r, p);
  CHECK(law.enthalpy(1.0) == Approx(0.0).epsilon(1e-14));
  CHECK(law.enthalpy(2.0) == Approx(2.0).epsilon(1e-6));
  CHECK(law.b_min() == Approx(-2.0).epsilon(5e-3));  // interpolation error on the first panel
  CHECK(critical_state_hom(law, 1.0).rho_cr == Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(PressureLaw::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}), InputError);
  CHECK_THROWS_AS(PressureLaw::tabulated({0.1, 1.0, 2.0}, {0.0, 1.0, 2.0}), InputError);
}

}  // TEST_SUITE
