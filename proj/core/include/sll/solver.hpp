#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sll/field.hpp"
#include "sll/geometry.hpp"
#include "sll/operators.hpp"
#include "sll/thermo.hpp"
#include "sll/upstream.hpp"

namespace sll {

struct EllipticOptions {
  double cg_tol = 1e-10;          // relative residual of each linear solve
  std::size_t max_cg_iter = 0;    // 0 selects 20 * unknowns
  std::size_t max_outer = 200;    // deferred-correction passes for the metric cross terms
  double outer_tol = 1e-12;       // stop when max |d psi| <= outer_tol * m
};

struct EllipticStats {
  std::size_t cg_iterations = 0;
  std::size_t outer_iterations = 0;
  double residual = 0.0;
};

// Solves -div(k grad psi) = omega with k = 1/rho (planar) or 1/(r rho) (axisymmetric).
// psi = 0 on the lower wall / axis, m on the upper wall, inlet column pinned to `inlet`
// (one value per sigma node), zero normal flux at the outlet.
std::vector<double> elliptic_solve(const Grid& grid, std::span<const double> rho,
                                   std::span<const double> omega, double m,
                                   std::span<const double> inlet, const EllipticOptions& opt = {},
                                   std::span<const double> guess = {}, EllipticStats* stats = nullptr);

struct PicardOptions {
  double relax = 0.5;
  double relax_min = 1.0 / 16.0;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  double mach_cap = 0.999;
  std::size_t upstream_panels = 0;  // 0 selects max(256, 4 ns)
  EllipticOptions elliptic;
};

struct StreamSolution {
  Grid grid;
  FlowField flow;
  UpstreamState upstream;
  double mass_flux = 0.0;
  std::size_t iterations = 0;
  std::vector<double> residual_history;
  double relax_final = 0.0;
  std::size_t label_clamps = 0;
  std::size_t cg_iterations = 0;
  double max_mach = 0.0;
  std::size_t max_mach_node = 0;
  std::vector<double> station_flux;
  double conservation_defect = 0.0;  // max over stations of |flux - m| / m

  const std::vector<double>& psi() const { return flow.psi; }
  const std::vector<double>& label() const { return flow.label; }
};

// Nodes whose mass-flux density exceeded the local j_max and were held at the sonic state.
struct SonicClip {
  std::size_t count = 0;
  double worst_ratio = 0.0;
  double j_max = 0.0;
  std::size_t node = 0;
};

// Nodal state implied by a stream function: labels, transported (B, S), subsonic speed from
// the local mass-flux density, and the vorticity carried by each streamline.
// Without `clip`, a supersonic flux density raises SonicExceeded; with it the node is set to the
// sonic state and recorded.
FlowField flow_from_stream(const Grid& grid, const DiscreteOps& ops, std::span<const double> psi,
                           const UpstreamState& up, const UpstreamData& data,
                           const thermo::GasModel& gas, std::size_t* label_clamps = nullptr,
                           SonicClip* clip = nullptr);

StreamSolution picard_solve(const Grid& grid, const UpstreamData& data, const thermo::GasModel& gas,
                            double m, const PicardOptions& opt = {},
                            std::span<const double> initial_psi = {});

// Inlet boundary values psi_-(sigma_j) for a grid.
std::vector<double> inlet_profile(const Grid& grid, const UpstreamState& up);

}  // namespace sll
