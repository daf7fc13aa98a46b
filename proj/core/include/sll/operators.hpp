#pragma once

#include <array>
#include <span>
#include <vector>

#include "sll/geometry.hpp"

namespace sll {

// Symmetry of a nodal field across the axis (axisymmetric layouts only).
enum class Parity {
  Even,      // mirror ghost value
  Odd,       // sign-flipped ghost value
  EvenZero,  // c1 s^2 + c2 s^4 fit (stream function)
};

struct Gradient {
  std::vector<double> fx;
  std::vector<double> fy;
};

// Second-order finite differences on a tensor (xi, sigma) node layout, with discrete metrics.
class DiscreteOps {
 public:
  explicit DiscreteOps(NodeLayout layout);

  const NodeLayout& layout() const { return layout_; }
  std::size_t size() const { return layout_.size(); }

  std::vector<double> d_xi(std::span<const double> f) const;
  std::vector<double> d_sigma(std::span<const double> f, Parity parity = Parity::Even) const;
  double d_sigma_at(std::span<const double> f, std::size_t i, std::size_t j, Parity parity) const;
  double d_xi_at(std::span<const double> f, std::size_t i, std::size_t j) const;

  Gradient gradient(std::span<const double> f, Parity parity = Parity::Even) const;
  // d(u2)/dx - d(u1)/dy with u1 even and u2 odd across the axis.
  std::vector<double> curl(std::span<const double> u1, std::span<const double> u2) const;

  const std::vector<double>& y_xi() const { return y_xi_; }
  const std::vector<double>& y_sigma() const { return y_sigma_; }
  // Dual-cell widths and nodal quadrature areas (dxi * dsigma * y_sigma).
  const std::vector<double>& xi_widths() const { return xi_w_; }
  const std::vector<double>& sigma_widths() const { return sig_w_; }
  const std::vector<double>& area() const { return area_; }

  // Weights w with sum_j w_j (D_sigma f)_j = f_N - f_0 (planar) or f_N (axisymmetric, EvenZero).
  const std::vector<double>& station_weights() const { return station_w_; }
  // Per-column transverse integral of a flux density fx (rho*u1, or r*rho*u1), using the weights above.
  std::vector<double> station_flux(std::span<const double> fx) const;

  // Bilinear interpolation in (xi, sigma).
  double interpolate(std::span<const double> f, double xi, double sigma) const;

 private:
  struct Stencil {
    std::array<std::size_t, 3> node;
    std::array<double, 3> w;
  };
  const Stencil& sigma_stencil(std::size_t j, Parity parity) const;

  NodeLayout layout_;
  bool axi_;
  std::vector<Stencil> sig_;  // per row, even/none parity
  Stencil row0_odd_, row0_zero_;
  std::vector<double> y_xi_, y_sigma_, xi_w_, sig_w_, area_, station_w_;
};

}  // namespace sll
