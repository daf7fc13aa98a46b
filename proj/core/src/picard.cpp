#include <algorithm>
#include <cmath>
#include <sstream>

#include "sll/errors.hpp"
#include "sll/solver.hpp"

namespace sll {

std::vector<double> inlet_profile(const Grid& grid, const UpstreamState& up) {
  std::vector<double> v(grid.nsig());
  for (std::size_t j = 0; j < grid.nsig(); ++j) v[j] = up.psi(grid.sigma(j));
  v.back() = up.mass_flux();
  if (grid.kind() == GeometryKind::Planar) v.front() = 0.0;
  return v;
}

FlowField flow_from_stream(const Grid& grid, const DiscreteOps& ops, std::span<const double> psi,
                           const UpstreamState& up, const UpstreamData& data,
                           const thermo::GasModel& gas, std::size_t* label_clamps, SonicClip* clip) {
  const std::size_t N = grid.size();
  const bool axi = grid.kind() == GeometryKind::Axisymmetric;
  FlowField f;
  f.layout = grid.layout();
  f.homentropic = gas.homentropic();
  f.gamma = gas.gamma();
  f.resize();
  std::copy(psi.begin(), psi.end(), f.psi.begin());
  const Gradient g = ops.gradient(psi, Parity::EvenZero);
  for (std::size_t n = 0; n < N; ++n) {
    const double r = axi ? f.layout.y[n] : 1.0;
    const double mx = g.fy[n] / r;   // rho u1
    const double my = -g.fx[n] / r;  // rho u2
    const double L = up.label(psi[n]);
    const TransportValue tv = transport_eval(L, data, label_clamps);
    const double S = gas.homentropic() ? std::numeric_limits<double>::quiet_NaN() : tv.S;
    const double j = std::hypot(mx, my);
    double q = 0.0, rho = 0.0;
    bool sonic = false;
    try {
      q = thermo::speed_from_mass_flux(gas, j, tv.B, tv.S);
    } catch (const SonicExceeded& e) {
      const std::size_t i = n / grid.nsig();
      if (!clip) {
        std::ostringstream os;
        os.precision(17);
        os << "local mass-flux density exceeds j_max at node " << n << " (x1 = " << f.layout.xi[i]
           << ", y = " << f.layout.y[n] << "): j/j_max = " << e.ratio();
        throw SonicExceeded(os.str(), e.j_max(), e.ratio(), SonicExceeded::Where{n, f.layout.xi[i], f.layout.y[n]});
      }
      ++clip->count;
      if (e.ratio() > clip->worst_ratio) *clip = {clip->count, e.ratio(), e.j_max(), n};
      sonic = true;
    }
    f.label[n] = std::clamp(L, 0.0, 1.0);
    if (sonic) {
      const auto cs = thermo::critical_state(gas, tv.B, tv.S);
      rho = cs.rho_cr;
      q = cs.q_cr;
      f.u1[n] = mx / j * q;
      f.u2[n] = my / j * q;
    } else if (j >= 1e-13 && q > 0.0) {
      rho = j / q;
      f.u1[n] = mx / rho;
      f.u2[n] = my / rho;
    } else {
      rho = thermo::density_from_speed(gas, 0.0, tv.B, tv.S);
      q = 0.0;
    }
    f.rho[n] = rho;
    f.p[n] = thermo::pressure_from_density(gas, rho, S);
    f.q[n] = q;
    f.c[n] = thermo::sound_speed(gas, rho, f.p[n]);
    f.mach[n] = q / f.c[n];
    f.B[n] = tv.B;
    f.S[n] = S;
    f.omega[n] = vorticity_source(rho, f.label[n], r, up, data, gas);
  }
  return f;
}

StreamSolution picard_solve(const Grid& grid, const UpstreamData& data, const thermo::GasModel& gas,
                            double m, const PicardOptions& opt, std::span<const double> initial_psi) {
  if (!(opt.relax > 0.0 && opt.relax <= 1.0)) throw InputError("relaxation must lie in (0, 1]");
  if (!(opt.mach_cap > 0.0 && opt.mach_cap < 1.0)) throw InputError("mach_cap must lie in (0, 1)");
  const std::size_t N = grid.size(), nJ = grid.nsig();
  const std::size_t panels = opt.upstream_panels ? opt.upstream_panels : std::max<std::size_t>(256, 4 * grid.ns());
  UpstreamState up = upstream_state(m, data, gas, grid.kind(), panels);
  const DiscreteOps ops(grid.layout());
  const std::vector<double> inlet = inlet_profile(grid, up);

  std::vector<double> psi(N);
  if (initial_psi.size() == N) {
    std::copy(initial_psi.begin(), initial_psi.end(), psi.begin());
  } else {
    for (std::size_t i = 0; i < grid.nxi(); ++i) {
      for (std::size_t j = 0; j < nJ; ++j) psi[grid.idx(i, j)] = inlet[j];
    }
  }
  for (std::size_t j = 0; j < nJ; ++j) psi[grid.idx(0, j)] = inlet[j];

  StreamSolution sol;
  sol.grid = grid;
  sol.mass_flux = m;
  std::size_t clamps = 0;
  // Intermediate iterates may overshoot j_max; such nodes are held sonic until the iteration settles.
  SonicClip clip;
  FlowField state = flow_from_stream(grid, ops, psi, up, data, gas, &clamps, &clip);
  std::vector<double> rho = state.rho;
  double relax = opt.relax;
  bool converged = false;
  std::size_t it = 0, clipped_run = 0;
  constexpr std::size_t kClipPatience = 100;
  for (it = 1; it <= opt.max_iter; ++it) {
    std::vector<double> omega(N);
    for (std::size_t n = 0; n < N; ++n) {
      const double r = grid.kind() == GeometryKind::Axisymmetric ? grid.layout().y[n] : 1.0;
      omega[n] = vorticity_source(rho[n], state.label[n], r, up, data, gas);
    }
    EllipticStats es;
    psi = elliptic_solve(grid, rho, omega, m, inlet, opt.elliptic, psi, &es);
    sol.cg_iterations += es.cg_iterations;
    clip = {};
    state = flow_from_stream(grid, ops, psi, up, data, gas, &clamps, &clip);
    double delta = 0.0;
    for (std::size_t n = 0; n < N; ++n) delta = std::max(delta, std::fabs(state.rho[n] - rho[n]) / state.rho[n]);
    sol.residual_history.push_back(delta);
    if (!std::isfinite(delta)) break;
    clipped_run = clip.count > 0 ? clipped_run + 1 : 0;
    if (clipped_run >= kClipPatience) break;
    if (delta <= opt.tol) {
      converged = true;
      break;
    }
    const std::size_t h = sol.residual_history.size();
    if (h >= 2 && delta > sol.residual_history[h - 2]) relax = std::max(0.5 * relax, opt.relax_min);
    for (std::size_t n = 0; n < N; ++n) rho[n] = (1.0 - relax) * rho[n] + relax * state.rho[n];
  }
  sol.iterations = std::min(it, opt.max_iter);
  sol.relax_final = relax;
  if (clip.count > 0) {
    const std::size_t n = clip.node;
    const double x = grid.layout().xi[n / nJ], y = grid.layout().y[n];
    std::ostringstream os;
    os.precision(17);
    os << "local mass-flux density exceeds j_max at node " << n << " (x1 = " << x << ", y = " << y
       << "): j/j_max = " << clip.worst_ratio << " (" << clip.count << " sonic nodes after "
       << sol.iterations << " iterations)";
    throw SonicExceeded(os.str(), clip.j_max, clip.worst_ratio, SonicExceeded::Where{n, x, y});
  }
  if (!converged) {
    std::ostringstream os;
    os << "Picard iteration did not converge in " << opt.max_iter << " iterations (last residual "
       << (sol.residual_history.empty() ? 0.0 : sol.residual_history.back()) << ")";
    throw DivergenceError(os.str(), sol.residual_history);
  }

  // Label monotonicity across every station.
  for (std::size_t i = 0; i < grid.nxi(); ++i) {
    for (std::size_t j = 1; j < nJ; ++j) {
      if (!(state.psi[grid.idx(i, j)] > state.psi[grid.idx(i, j - 1)])) {
        std::ostringstream os;
        os << "stream function not increasing across station " << i << " at sigma index " << j;
        throw SolverStateError(os.str());
      }
    }
  }

  sol.max_mach = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    if (state.mach[n] > sol.max_mach) {
      sol.max_mach = state.mach[n];
      sol.max_mach_node = n;
    }
  }
  if (sol.max_mach > opt.mach_cap) {
    const std::size_t n = sol.max_mach_node;
    const auto cs = thermo::critical_state(gas, state.B[n], gas.homentropic() ? 1.0 : state.S[n]);
    std::ostringstream os;
    os.precision(17);
    os << "converged flow exceeds mach_cap " << opt.mach_cap << ": M = " << sol.max_mach << " at node " << n;
    throw SonicExceeded(os.str(), cs.j_max, sol.max_mach / opt.mach_cap,
                        SonicExceeded::Where{n, grid.layout().xi[n / nJ], grid.layout().y[n]});
  }

  std::vector<double> fx(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double r = grid.kind() == GeometryKind::Axisymmetric ? grid.layout().y[n] : 1.0;
    fx[n] = r * state.rho[n] * state.u1[n];
  }
  sol.station_flux = ops.station_flux(fx);
  sol.conservation_defect = 0.0;
  for (double F : sol.station_flux) {
    sol.conservation_defect = std::max(sol.conservation_defect, std::fabs(F - m) / m);
  }
  sol.label_clamps = clamps;
  sol.flow = std::move(state);
  sol.upstream = std::move(up);
  return sol;
}

}  // namespace sll
