#include "sll/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sll/errors.hpp"
#include "sll/operators.hpp"

namespace sll {

namespace {

double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double s = 1.0 - t * t;
  return s * s * s * s;
}

bool axisymmetric(const FlowField& f) { return f.kind() == GeometryKind::Axisymmetric; }

void check_field(const FlowField& f) {
  const std::size_t n = f.size();
  for (const auto* v : {&f.rho, &f.u1, &f.u2, &f.p, &f.B}) {
    if (v->size() != n) throw InputError("flow field arrays do not match the layout");
  }
}

// Nodal quadrature weight, with the extra r of the axisymmetric volume element when asked.
std::vector<double> weights(const DiscreteOps& ops, bool r_weight) {
  std::vector<double> w = ops.area();
  if (r_weight) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] *= ops.layout().y[k];
  }
  return w;
}

bool in_window(const NodeLayout& l, std::size_t i, std::size_t j, const Window& w) {
  return l.xi[i] >= w.xi_lo && l.xi[i] <= w.xi_hi && l.sigma[j] >= w.sigma_lo &&
         l.sigma[j] <= w.sigma_hi;
}

}  // namespace

Window Window::middle(const NodeLayout& layout, double fraction) {
  const double a = layout.xi.front(), b = layout.xi.back();
  const double margin = 0.5 * (1.0 - fraction);
  return {a + margin * (b - a), b - margin * (b - a), margin, 1.0 - margin};
}

double TestBump::value(double xi, double sigma) const {
  return bump((xi - xi_c) / xi_half) * bump((sigma - sigma_c) / sigma_half);
}

std::vector<TestBump> default_test_family(const NodeLayout& layout) {
  const double a = layout.xi.front(), L = layout.xi.back() - a;
  std::vector<TestBump> out;
  // Supports stay within sigma in [0.15, 0.85], clear of the one-sided wall stencils.
  for (const auto& [hx, hs] : {std::pair{L / 8.0, 0.15}, std::pair{L / 16.0, 0.075}}) {
    for (double fx : {0.25, 0.5, 0.75}) {
      for (double fs : {0.3, 0.5, 0.7}) out.push_back({a + fx * L, hx, fs, hs});
    }
  }
  return out;
}

WeakResiduals weak_residuals(const FlowField& flow, std::span<const TestBump> family) {
  check_field(flow);
  if (family.empty()) throw InputError("empty test family");
  const auto& l = flow.layout;
  const DiscreteOps ops(l);
  const bool axi = axisymmetric(flow);
  const double x_lo = l.xi.front(), x_hi = l.xi.back();
  const std::size_t n = flow.size();

  // Fluxes; axisymmetric rows carry the factor r and the radial momentum law its p source.
  std::vector<double> m1(n), m2(n), a11(n), a12(n), a22(n), e1(n), e2(n), src(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = axi ? l.y[k] : 1.0;
    const double ru = flow.rho[k] * flow.u1[k], rv = flow.rho[k] * flow.u2[k];
    m1[k] = r * ru;
    m2[k] = r * rv;
    a11[k] = r * (ru * flow.u1[k] + flow.p[k]);
    a12[k] = r * ru * flow.u2[k];
    a22[k] = r * (rv * flow.u2[k] + flow.p[k]);
    e1[k] = m1[k] * flow.B[k];
    e2[k] = m2[k] * flow.B[k];
    src[k] = axi ? flow.p[k] : 0.0;
  }

  const auto& A = ops.area();
  WeakResiduals out;
  double energy = 0.0;
  std::vector<double> phi(n);
  for (const auto& t : family) {
    if (t.xi_c - t.xi_half < x_lo || t.xi_c + t.xi_half > x_hi || t.sigma_c - t.sigma_half < 0.0 ||
        t.sigma_c + t.sigma_half > 1.0) {
      throw InputError("test function support leaves the domain interior");
    }
    for (std::size_t i = 0; i < l.nxi(); ++i) {
      for (std::size_t j = 0; j < l.nsig(); ++j) phi[l.idx(i, j)] = t.value(l.xi[i], l.sigma[j]);
    }
    const Gradient g = ops.gradient(phi);
    double norm = 0.0, rm = 0.0, r1 = 0.0, r2 = 0.0, re = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      norm += A[k] * std::hypot(g.fx[k], g.fy[k]);
      rm += A[k] * (m1[k] * g.fx[k] + m2[k] * g.fy[k]);
      r1 += A[k] * (a11[k] * g.fx[k] + a12[k] * g.fy[k]);
      r2 += A[k] * (a12[k] * g.fx[k] + a22[k] * g.fy[k] + src[k] * phi[k]);
      re += A[k] * (e1[k] * g.fx[k] + e2[k] * g.fy[k]);
    }
    if (!(norm > 0.0)) throw InputError("test function is not resolved by the grid");
    out.mass = std::max(out.mass, std::abs(rm) / norm);
    out.momentum1 = std::max(out.momentum1, std::abs(r1) / norm);
    out.momentum2 = std::max(out.momentum2, std::abs(r2) / norm);
    energy = std::max(energy, std::abs(re) / norm);
  }
  if (!flow.homentropic) out.energy = energy;
  return out;
}

namespace {

double window_integral(const FlowField& flow, const Window& window, const std::vector<double>& f) {
  const auto& l = flow.layout;
  const DiscreteOps ops(l);
  const auto w = weights(ops, axisymmetric(flow));
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < l.nxi(); ++i) {
    for (std::size_t j = 0; j < l.nsig(); ++j) {
      if (!in_window(l, i, j, window)) continue;
      const std::size_t k = l.idx(i, j);
      s += std::abs(f[k]) * w[k];
      ++count;
    }
  }
  if (count == 0) throw InputError("diagnostic window contains no nodes");
  return s;
}

}  // namespace

double curl_tv(const FlowField& flow, const Window& window) {
  check_field(flow);
  const DiscreteOps ops(flow.layout);
  return window_integral(flow, window, ops.curl(flow.u1, flow.u2));
}

double omega_tv(const FlowField& flow, const Window& window) {
  check_field(flow);
  if (flow.omega.size() != flow.size()) throw InputError("flow field carries no vorticity");
  return window_integral(flow, window, flow.omega);
}

double curl_defect(const FlowField& flow, const Window& window) {
  check_field(flow);
  if (flow.omega.size() != flow.size()) throw InputError("flow field carries no vorticity");
  const DiscreteOps ops(flow.layout);
  auto d = ops.curl(flow.u1, flow.u2);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= flow.omega[k];
  return window_integral(flow, window, d);
}

ConcentrationStats concentration(std::span<const VelocitySample> sample, const thermo::GasModel& gas,
                                 double B, double S) {
  if (sample.empty()) throw InputError("empty velocity sample");
  double total = 0.0;
  for (const auto& a : sample) {
    if (!(a.weight >= 0.0)) throw InputError("sample weights must be nonnegative");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("sample weights must sum to one");

  ConcentrationStats out;
  for (std::size_t a = 0; a < sample.size(); ++a) {
    for (std::size_t b = a + 1; b < sample.size(); ++b) {
      out.pairing_stat += 2.0 * sample[a].weight * sample[b].weight *
                          thermo::pairing(gas, sample[a].u, sample[b].u, B, S);
    }
  }
  if (sample.size() == 1) (void)thermo::pairing(gas, sample[0].u, sample[0].u, B, S);

  double qbar = 0.0;
  std::vector<double> q(sample.size());
  for (std::size_t a = 0; a < sample.size(); ++a) {
    double s = 0.0;
    for (double v : sample[a].u) s += v * v;
    q[a] = std::sqrt(s);
    qbar += sample[a].weight * q[a];
  }
  for (std::size_t a = 0; a < sample.size(); ++a) {
    out.speed_variance += sample[a].weight * (q[a] - qbar) * (q[a] - qbar);
  }
  return out;
}

std::vector<std::pair<double, double>> default_stations(const NodeLayout& layout) {
  const double a = layout.xi.front(), L = layout.xi.back() - a;
  std::vector<std::pair<double, double>> out;
  for (double fx : {0.25, 0.375, 0.5, 0.625, 0.75}) {
    for (double fs : {0.25, 0.5, 0.75}) out.emplace_back(a + fx * L, fs);
  }
  return out;
}

ConcentrationStats sequence_concentration(std::span<const FlowField* const> sequence,
                                          std::span<const double> weights,
                                          const thermo::GasModel& gas) {
  if (sequence.empty() || sequence.size() != weights.size()) {
    throw InputError("sequence and weights must be nonempty and of equal length");
  }
  std::vector<DiscreteOps> ops;
  ops.reserve(sequence.size());
  for (const auto* f : sequence) {
    check_field(*f);
    ops.emplace_back(f->layout);
  }
  const FlowField& last = *sequence.back();
  ConcentrationStats out;
  for (const auto& [xi, sigma] : default_stations(last.layout)) {
    std::vector<VelocitySample> sample;
    for (std::size_t a = 0; a < sequence.size(); ++a) {
      const auto* f = sequence[a];
      sample.push_back({{ops[a].interpolate(f->u1, xi, sigma), ops[a].interpolate(f->u2, xi, sigma)},
                        weights[a]});
    }
    const double B = ops.back().interpolate(last.B, xi, sigma);
    const double S = last.homentropic ? 0.0 : ops.back().interpolate(last.S, xi, sigma);
    const auto st = concentration(sample, gas, B, S);
    out.pairing_stat = std::max(out.pairing_stat, st.pairing_stat);
    out.speed_variance = std::max(out.speed_variance, st.speed_variance);
  }
  return out;
}

double bernoulli_gradient_check(const FlowField& flow, const Window* window) {
  check_field(flow);
  const auto& l = flow.layout;
  const DiscreteOps ops(l);
  const bool axi = axisymmetric(flow);
  const auto w = weights(ops, axi);
  const Gradient gB = ops.gradient(flow.B);
  const auto om = ops.curl(flow.u1, flow.u2);
  Gradient gS;
  if (!flow.homentropic) gS = ops.gradient(flow.S);

  double s = 0.0;
  for (std::size_t i = 1; i + 1 < l.nxi(); ++i) {
    for (std::size_t j = axi ? 0 : 1; j + 1 < l.nsig(); ++j) {
      if (window && !in_window(l, i, j, *window)) continue;
      const std::size_t k = l.idx(i, j);
      double dx = gB.fx[k] - om[k] * flow.u2[k];
      double dy = gB.fy[k] + om[k] * flow.u1[k];
      if (!flow.homentropic) {
        const double t = std::pow(flow.rho[k], flow.gamma - 1.0) / flow.gamma;
        dx -= t * gS.fx[k];
        dy -= t * gS.fy[k];
      }
      s += std::hypot(dx, dy) * w[k];
    }
  }
  return s;
}

BoundaryTrace boundary_trace(const FlowField& flow, double layer) {
  check_field(flow);
  if (!(layer > 0.0 && layer < 0.5)) throw InputError("boundary layer width must lie in (0, 0.5)");
  const auto& l = flow.layout;
  const DiscreteOps ops(l);
  const bool axi = axisymmetric(flow);
  const std::size_t n = flow.size();
  std::vector<double> m1(n), m2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = axi ? l.y[k] : 1.0;
    m1[k] = r * flow.rho[k] * flow.u1[k];
    m2[k] = r * flow.rho[k] * flow.u2[k];
  }
  const auto& A = ops.area();
  const double a = l.xi.front(), L = l.xi.back() - a;

  BoundaryTrace out;
  std::vector<double> phi(n);
  for (int wall = 0; wall < 2; ++wall) {
    double worst = 0.0;
    for (double fx : {0.25, 0.5, 0.75}) {
      const double xc = a + fx * L, hx = L / 8.0;
      for (std::size_t i = 0; i < l.nxi(); ++i) {
        for (std::size_t j = 0; j < l.nsig(); ++j) {
          const double d = wall == 0 ? l.sigma[j] : 1.0 - l.sigma[j];
          const double t = std::max(0.0, 1.0 - d / layer);
          phi[l.idx(i, j)] = bump((l.xi[i] - xc) / hx) * t * t * t * t;
        }
      }
      const Gradient g = ops.gradient(phi);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += A[k] * (m1[k] * g.fx[k] + m2[k] * g.fy[k]);
      worst = std::max(worst, std::abs(s));
    }
    (wall == 0 ? out.lower : out.upper) = worst;
  }
  return out;
}

FieldBounds field_bounds(const FlowField& flow, const Window& window) {
  check_field(flow);
  const auto& l = flow.layout;
  const double inf = std::numeric_limits<double>::infinity();
  FieldBounds b;
  b.max_mach = flow.max_mach();
  b.sup_B = -inf;
  b.inf_B = inf;
  b.sup_S = -inf;
  b.inf_S = inf;
  std::size_t count = 0;
  for (std::size_t i = 0; i < l.nxi(); ++i) {
    for (std::size_t j = 0; j < l.nsig(); ++j) {
      if (!in_window(l, i, j, window)) continue;
      const std::size_t k = l.idx(i, j);
      b.sup_B = std::max(b.sup_B, flow.B[k]);
      b.inf_B = std::min(b.inf_B, flow.B[k]);
      if (!flow.homentropic) {
        b.sup_S = std::max(b.sup_S, flow.S[k]);
        b.inf_S = std::min(b.inf_S, flow.S[k]);
      }
      ++count;
    }
  }
  if (count == 0) throw InputError("diagnostic window contains no nodes");
  if (flow.homentropic) b.sup_S = b.inf_S = std::numeric_limits<double>::quiet_NaN();
  return b;
}

DiagnosticsBundle diagnose(const FlowField& flow, const thermo::GasModel& gas,
                           const FlowField* previous) {
  const Window window = Window::middle(flow.layout);
  DiagnosticsBundle d;
  d.weak = weak_residuals(flow, default_test_family(flow.layout));
  d.curl_tv = curl_tv(flow, window);
  d.bounds = field_bounds(flow, window);
  d.trace = boundary_trace(flow);
  d.bernoulli_defect = bernoulli_gradient_check(flow);
  d.b_min_unbounded = gas.homentropic() && std::isinf(gas.law().b_min());
  if (previous) {
    const FlowField* seq[2] = {previous, &flow};
    const double w[2] = {0.5, 0.5};
    d.concentration = sequence_concentration(seq, w, gas);
  }
  return d;
}

}  // namespace sll
