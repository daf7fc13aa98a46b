#include "sll/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sll/errors.hpp"

namespace sll {

std::string to_string(GeometryKind kind) {
  return kind == GeometryKind::Planar ? "planar" : "axisymmetric";
}

Nozzle Nozzle::planar(Curve f1, Curve f2) {
  Nozzle n;
  n.kind_ = GeometryKind::Planar;
  n.lower_ = std::move(f1);
  n.upper_ = std::move(f2);
  return n;
}

Nozzle Nozzle::axisymmetric(Curve f) {
  Nozzle n;
  n.kind_ = GeometryKind::Axisymmetric;
  n.lower_ = Curve::constant(0.0);
  n.upper_ = std::move(f);
  return n;
}

Nozzle Nozzle::straight(GeometryKind kind) {
  if (kind == GeometryKind::Planar) return planar(Curve::constant(0.0), Curve::constant(1.0));
  return axisymmetric(Curve::constant(1.0));
}

Nozzle Nozzle::tanh_contraction(GeometryKind kind, double amplitude, double center, double width) {
  Curve wall = Curve::tanh_step(1.0, -amplitude, center, width);
  if (kind == GeometryKind::Planar) return planar(Curve::constant(0.0), std::move(wall));
  return axisymmetric(std::move(wall));
}

std::string Nozzle::describe() const {
  if (kind_ == GeometryKind::Planar) {
    return "planar(f1=" + lower_.describe() + ", f2=" + upper_.describe() + ")";
  }
  return "axisymmetric(f=" + upper_.describe() + ")";
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_nozzle(const Nozzle& nozzle, double x1_min, double x1_max,
                                 double tol_far, double deriv_bound, std::size_t samples) {
  if (!(x1_max > x1_min)) throw InputError("truncation bounds must satisfy x1_min < x1_max");
  if (!nozzle.lower().covers(x1_min, x1_max) || !nozzle.upper().covers(x1_min, x1_max)) {
    throw InputError("wall functions are not evaluable over the truncated domain");
  }
  samples = std::max<std::size_t>(samples, 3);
  const bool planar = nozzle.kind() == GeometryKind::Planar;
  ValidationReport rep;

  double min_gap = std::numeric_limits<double>::infinity();
  double min_at = x1_min;
  double first_bad = std::numeric_limits<double>::quiet_NaN();
  double sup_val = 0.0, sup_d1 = 0.0, sup_d2 = 0.0, sup_curv = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = x1_min + (x1_max - x1_min) * static_cast<double>(k) / (samples - 1);
    const double gap = nozzle.width(x);
    if (!std::isfinite(gap)) throw InputError("wall function is not finite at x1 = " + std::to_string(x));
    if (gap < min_gap) {
      min_gap = gap;
      min_at = x;
    }
    if (!(gap > 0.0) && std::isnan(first_bad)) first_bad = x;
    for (const Curve* c : {&nozzle.lower(), &nozzle.upper()}) {
      sup_val = std::max(sup_val, std::fabs(c->value(x)));
      const double d1 = c->d1(x);
      const double d2 = c->d2(x);
      sup_d1 = std::max(sup_d1, std::fabs(d1));
      sup_d2 = std::max(sup_d2, std::fabs(d2));
      sup_curv = std::max(sup_curv, std::fabs(d2) / std::pow(1.0 + d1 * d1, 1.5));
    }
  }
  rep.min_gap = min_gap;
  rep.min_gap_location = min_at;
  {
    ValidationCheck c;
    c.name = planar ? "wall_order" : "positive_radius";
    c.passed = min_gap > 0.0;
    c.measured = min_gap;
    c.threshold = 0.0;
    c.location = c.passed ? min_at : first_bad;
    c.detail = planar ? "min over samples of f2 - f1" : "min over samples of f";
    rep.checks.push_back(c);
  }

  const double up_lo = std::fabs(nozzle.lower().value(x1_min) - 0.0);
  const double up_hi = std::fabs(nozzle.upper().value(x1_min) - 1.0);
  {
    ValidationCheck c;
    c.name = "upstream_flatness";
    c.measured = std::max(up_lo, up_hi);
    c.threshold = tol_far;
    c.passed = c.measured <= tol_far;
    c.location = x1_min;
    c.detail = planar ? "|f1 - 0|, |f2 - 1| at x1_min" : "|f - 1| at x1_min";
    rep.checks.push_back(c);
  }

  const double a = nozzle.lower().right_limit();
  const double b = nozzle.upper().right_limit();
  rep.downstream_lower = a;
  rep.downstream_upper = b;
  {
    ValidationCheck c;
    c.name = "downstream_flatness";
    if (std::isnan(a) || std::isnan(b)) {
      c.measured = std::numeric_limits<double>::infinity();
      c.detail = "wall has no downstream limit";
    } else {
      c.measured = std::max(std::fabs(nozzle.lower().value(x1_max) - a),
                            std::fabs(nozzle.upper().value(x1_max) - b));
      c.detail = planar ? "|f1 - a|, |f2 - b| at x1_max" : "|f - r0| at x1_max";
    }
    c.threshold = tol_far;
    c.passed = c.measured <= tol_far;
    c.location = x1_max;
    rep.checks.push_back(c);
  }
  {
    ValidationCheck c;
    c.name = "downstream_gap";
    c.measured = b - a;
    c.threshold = 0.0;
    c.passed = b - a > 0.0;
    c.detail = planar ? "b - a" : "r0";
    rep.checks.push_back(c);
  }
  {
    ValidationCheck c;
    c.name = "derivative_bounds";
    c.measured = std::max({sup_val, sup_d1, sup_d2});
    c.threshold = deriv_bound;
    c.passed = c.measured <= deriv_bound;
    std::ostringstream os;
    os.precision(17);
    os << "sup|f| = " << sup_val << ", sup|f'| = " << sup_d1 << ", sup|f''| = " << sup_d2;
    c.detail = os.str();
    rep.checks.push_back(c);
  }
  rep.exterior_sphere_radius =
      sup_curv > 0.0 ? 1.0 / sup_curv : std::numeric_limits<double>::infinity();
  return rep;
}

std::vector<double> sigma_nodes(GeometryKind kind, std::size_t ns) {
  std::vector<double> s(ns + 1);
  const double h = 1.0 / static_cast<double>(ns);
  for (std::size_t j = 0; j <= ns; ++j) {
    s[j] = (kind == GeometryKind::Planar || j == ns) ? static_cast<double>(j) * h
                                                      : (static_cast<double>(j) + 0.5) * h;
  }
  s[ns] = 1.0;
  return s;
}

Grid build_grid(const Nozzle& nozzle, std::size_t nx, std::size_t ns, double x1_min, double x1_max) {
  if (nx < 8 || ns < 8) throw InputError("grid needs nx, ns >= 8");
  if (!(x1_max > x1_min)) throw InputError("truncation bounds must satisfy x1_min < x1_max");
  if (!nozzle.lower().covers(x1_min, x1_max) || !nozzle.upper().covers(x1_min, x1_max)) {
    throw InputError("wall functions are not evaluable over the truncated domain");
  }
  Grid g;
  g.nozzle_ = nozzle;
  g.ns_ = ns;
  g.layout_.kind = nozzle.kind();
  g.layout_.xi.resize(nx + 1);
  for (std::size_t i = 0; i <= nx; ++i) {
    g.layout_.xi[i] = x1_min + (x1_max - x1_min) * static_cast<double>(i) / static_cast<double>(nx);
  }
  g.layout_.xi[nx] = x1_max;
  g.layout_.sigma = sigma_nodes(nozzle.kind(), ns);
  g.layout_.y.resize(g.layout_.size());
  g.metric_.resize(g.layout_.size());
  for (std::size_t i = 0; i <= nx; ++i) {
    const double x = g.layout_.xi[i];
    const double a = nozzle.base(x);
    const double w = nozzle.width(x);
    if (!(w > 0.0)) {
      std::ostringstream os;
      os << "zero or negative wall gap at x1 = " << x;
      throw GeometryError(os.str());
    }
    const double ad = nozzle.base_d1(x);
    const double wd = nozzle.width_d1(x);
    for (std::size_t j = 0; j <= ns; ++j) {
      const double s = g.layout_.sigma[j];
      g.layout_.y[g.idx(i, j)] = a + s * w;
      g.metric_[g.idx(i, j)] = Metric{ad + s * wd, w};
    }
  }
  return g;
}

Metric Grid::metric_at(double xi, double sigma) const {
  return Metric{nozzle_.base_d1(xi) + sigma * nozzle_.width_d1(xi), nozzle_.width(xi)};
}

std::vector<Metric> Grid::finite_difference_metrics() const {
  const std::size_t nI = nxi(), nJ = nsig();
  std::vector<Metric> out(size());
  const auto& s = layout_.sigma;
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t j = 0; j < nJ; ++j) {
      double yx;
      const double h = dxi();
      if (i == 0) {
        yx = (-3.0 * y(0, j) + 4.0 * y(1, j) - y(2, j)) / (2.0 * h);
      } else if (i + 1 == nI) {
        yx = (3.0 * y(i, j) - 4.0 * y(i - 1, j) + y(i - 2, j)) / (2.0 * h);
      } else {
        yx = (y(i + 1, j) - y(i - 1, j)) / (2.0 * h);
      }
      std::size_t j0 = (j == 0) ? 0 : (j + 1 == nJ ? j - 2 : j - 1);
      const double xs[3] = {s[j0], s[j0 + 1], s[j0 + 2]};
      const auto w = num::derivative_weights(s[j], xs);
      const double ys = w[0] * y(i, j0) + w[1] * y(i, j0 + 1) + w[2] * y(i, j0 + 2);
      out[idx(i, j)] = Metric{yx, ys};
    }
  }
  return out;
}

std::pair<double, double> Grid::locate(double x1, double yv) const {
  if (x1 < x1_min() || x1 > x1_max()) throw DomainError("point outside the truncated domain");
  const double w = nozzle_.width(x1);
  const double s = (yv - nozzle_.base(x1)) / w;
  if (s < -1e-12 || s > 1.0 + 1e-12) throw DomainError("point outside the nozzle");
  return {x1, std::clamp(s, 0.0, 1.0)};
}

std::pair<std::size_t, std::size_t> Grid::nearest_node(double x1, double yv) const {
  auto [xi_v, s] = locate(x1, yv);
  const auto& X = layout_.xi;
  const auto& S = layout_.sigma;
  auto nearest = [](const std::vector<double>& v, double t) {
    auto it = std::lower_bound(v.begin(), v.end(), t);
    std::size_t k = static_cast<std::size_t>(it - v.begin());
    if (k == v.size()) return v.size() - 1;
    if (k > 0 && t - v[k - 1] < v[k] - t) return k - 1;
    return k;
  };
  return {nearest(X, xi_v), nearest(S, s)};
}

}  // namespace sll
