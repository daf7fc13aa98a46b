#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sll/errors.hpp"
#include "sll/geometry.hpp"
#include "sll/operators.hpp"

using namespace sll;
using doctest::Approx;

TEST_SUITE("geometry") {

TEST_CASE("curves") {
  const auto c = Curve::constant(2.5);
  CHECK(c.value(-3.0) == 2.5);
  CHECK(c.d1(1.0) == 0.0);
  CHECK(c.right_limit() == 2.5);
  const auto p = Curve::polynomial({1.0, -2.0, 3.0});
  CHECK(p.value(2.0) == Approx(9.0));
  CHECK(p.d1(2.0) == Approx(10.0));
  CHECK(p.d2(2.0) == Approx(6.0));
  CHECK(std::isnan(p.right_limit()));
  const auto t = Curve::tanh_step(1.0, -0.3, 0.0, 1.0);
  CHECK(t.value(0.0) == Approx(0.85));
  CHECK(t.right_limit() == Approx(0.7));
  CHECK(t.left_limit() == Approx(1.0));
  const double h = 1e-5;
  CHECK(t.d1(0.4) == Approx((t.value(0.4 + h) - t.value(0.4 - h)) / (2 * h)).epsilon(1e-8));
  CHECK(t.d2(0.4) == Approx((t.d1(0.4 + h) - t.d1(0.4 - h)) / (2 * h)).epsilon(1e-7));
  std::vector<double> xs, ys;
  for (int k = 0; k <= 40; ++k) {
    xs.push_back(-2.0 + 0.1 * k);
    ys.push_back(std::sin(xs.back()));
  }
  const auto s = Curve::tabulated(xs, ys);
  CHECK(s.value(0.33) == Approx(std::sin(0.33)).epsilon(1e-5));
  CHECK(s.d1(0.33) == Approx(std::cos(0.33)).epsilon(1e-3));
  CHECK_THROWS(s.value(2.5));
}

TEST_CASE("straight channel passes every check") {
  for (auto kind : {GeometryKind::Planar, GeometryKind::Axisymmetric}) {
    const auto rep = validate_nozzle(Nozzle::straight(kind), -5.0, 5.0);
    CHECK(rep.ok());
    CHECK(rep.min_gap == Approx(1.0));
    CHECK(std::isinf(rep.exterior_sphere_radius));
    CHECK(rep.find(kind == GeometryKind::Planar ? "wall_order" : "positive_radius") != nullptr);
  }
}

TEST_CASE("contraction needs a long enough domain") {
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0);
  auto rep = validate_nozzle(noz, -20.0, 20.0);
  CHECK(rep.ok());
  CHECK(rep.downstream_upper == Approx(0.7));
  CHECK(rep.min_gap == Approx(0.7).epsilon(1e-9));
  rep = validate_nozzle(noz, -3.0, 20.0);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.find("upstream_flatness")->passed);
  rep = validate_nozzle(noz, -20.0, 3.0);
  CHECK_FALSE(rep.find("downstream_flatness")->passed);
}

TEST_CASE("failing walls are located") {
  const auto crossing = Nozzle::planar(Curve::constant(0.0), Curve::tanh_step(1.0, -1.5, 0.0, 1.0));
  auto rep = validate_nozzle(crossing, -20.0, 20.0);
  const auto* c = rep.find("wall_order");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  REQUIRE(c->location.has_value());
  CHECK(std::fabs(*c->location - std::atanh(1.0 / 3.0)) < 0.01);
  CHECK_FALSE(rep.find("downstream_gap")->passed);
  const auto linear = Nozzle::axisymmetric(Curve::polynomial({1.0, 0.01}));
  rep = validate_nozzle(linear, -5.0, 5.0);
  CHECK_FALSE(rep.find("downstream_flatness")->passed);
  const auto steep = Nozzle::planar(Curve::constant(0.0), Curve::tanh_step(1.0, -0.3, 0.0, 1e-4));
  rep = validate_nozzle(steep, -5.0, 5.0);
  CHECK_FALSE(rep.find("derivative_bounds")->passed);
}

TEST_CASE("grid layout and metric") {
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0);
  const auto g = build_grid(noz, 16, 8, -4.0, 4.0);
  CHECK(g.nxi() == 17);
  CHECK(g.nsig() == 9);
  CHECK(g.y(8, 8) == Approx(0.85));
  CHECK(g.y(8, 0) == 0.0);
  const auto& m = g.metric(8, 4);
  CHECK(m.y_sigma == Approx(0.85));
  CHECK(m.y_xi == Approx(0.5 * noz.width_d1(0.0)));
  const auto [xi, s] = g.locate(0.0, 0.425);
  CHECK(xi == Approx(0.0));
  CHECK(s == Approx(0.5));
  CHECK(g.nearest_node(0.0, 0.425) == std::pair<std::size_t, std::size_t>{8, 4});

  const auto sa = sigma_nodes(GeometryKind::Axisymmetric, 4);
  REQUIRE(sa.size() == 5);
  CHECK(sa[0] == Approx(0.125));
  CHECK(sa[3] == Approx(0.875));
  CHECK(sa[4] == 1.0);
}

}  // TEST_SUITE

TEST_SUITE("operators") {

TEST_CASE("linear fields are differentiated exactly") {
  const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0);
  const auto g = build_grid(noz, 32, 16, -4.0, 4.0);
  DiscreteOps ops(g.layout());
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.nxi(); ++i)
    for (std::size_t j = 0; j < g.nsig(); ++j) f[g.idx(i, j)] = 2.0 * g.xi(i) - 3.0 * g.y(i, j) + 1.0;
  const auto grad = ops.gradient(f);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(grad.fx[n] == Approx(2.0).epsilon(1e-10));
    CHECK(grad.fy[n] == Approx(-3.0).epsilon(1e-10));
  }
}

TEST_CASE("curl of a rotation and second-order convergence") {
  auto err = [](std::size_t n) {
    const auto noz = Nozzle::tanh_contraction(GeometryKind::Planar, 0.3, 0.0, 1.0);
    const auto g = build_grid(noz, 2 * n, n, -3.0, 3.0);
    DiscreteOps ops(g.layout());
    std::vector<double> u1(g.size()), u2(g.size());
    for (std::size_t i = 0; i < g.nxi(); ++i)
      for (std::size_t j = 0; j < g.nsig(); ++j) {
        const double x = g.xi(i), y = g.y(i, j);
        u1[g.idx(i, j)] = std::sin(x) * std::cos(2 * y);
        u2[g.idx(i, j)] = std::cos(x + y);
      }
    const auto w = ops.curl(u1, u2);
    double e = 0.0;
    for (std::size_t i = 0; i < g.nxi(); ++i)
      for (std::size_t j = 0; j < g.nsig(); ++j) {
        const double x = g.xi(i), y = g.y(i, j);
        const double exact = -std::sin(x + y) + 2 * std::sin(x) * std::sin(2 * y);
        e = std::max(e, std::fabs(w[g.idx(i, j)] - exact));
      }
    return e;
  };
  const double e1 = err(16), e2 = err(32);
  CHECK(std::log2(e1 / e2) > 1.8);
  CHECK(e2 < 1e-2);
}

TEST_CASE("station weights integrate the transverse derivative") {
  for (auto kind : {GeometryKind::Planar, GeometryKind::Axisymmetric}) {
    const auto g = build_grid(Nozzle::straight(kind), 8, 12, 0.0, 1.0);
    DiscreteOps ops(g.layout());
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.nxi(); ++i)
      for (std::size_t j = 0; j < g.nsig(); ++j) {
        const double s = g.sigma(j);
        f[g.idx(i, j)] = kind == GeometryKind::Planar ? std::sin(s) : s * s * (1.0 + s * s);
      }
    const auto d = ops.d_sigma(f, kind == GeometryKind::Planar ? Parity::Even : Parity::EvenZero);
    const auto& w = ops.station_weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < g.nsig(); ++j) sum += w[j] * d[g.idx(0, j)];
    CHECK(sum == Approx(kind == GeometryKind::Planar ? std::sin(1.0) : 2.0).epsilon(1e-12));
  }
}

TEST_CASE("axisymmetric parity stencils") {
  const auto g = build_grid(Nozzle::straight(GeometryKind::Axisymmetric), 8, 16, 0.0, 1.0);
  DiscreteOps ops(g.layout());
  std::vector<double> even(g.size()), odd(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double r = g.layout().y[n];
    even[n] = 1.0 + r * r;
    odd[n] = r;
  }
  CHECK(ops.d_sigma_at(even, 2, 0, Parity::Even) == Approx(2.0 * g.sigma(0)).epsilon(1e-10));
  CHECK(ops.d_sigma_at(odd, 2, 0, Parity::Odd) == Approx(1.0).epsilon(1e-10));
}

}  // TEST_SUITE
