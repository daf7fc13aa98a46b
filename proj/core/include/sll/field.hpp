#pragma once

#include <vector>

#include "sll/geometry.hpp"
#include "sll/thermo.hpp"

namespace sll {

// Nodal flow state on a body-fitted layout. For axisymmetric layouts u1, u2 are the axial and radial
// components and y is the radius.
struct FlowField {
  NodeLayout layout;
  bool homentropic = false;
  double gamma = 1.4;  // adiabatic exponent for the full Euler closure

  std::vector<double> rho, u1, u2, p, q, c, mach, B, S;
  std::vector<double> psi, label, omega;

  std::size_t size() const { return layout.size(); }
  GeometryKind kind() const { return layout.kind; }
  void resize();
  // Recompute q, c, M from (rho, u, p).
  void fill_kinematics(const thermo::GasModel& gas);
  // Recompute B (and S for full Euler) from (rho, p, q).
  void fill_invariants(const thermo::GasModel& gas);
  double max_mach() const;
};

}  // namespace sll
