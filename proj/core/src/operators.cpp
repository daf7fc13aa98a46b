#include "sll/operators.hpp"

#include <algorithm>
#include <cmath>

#include "sll/errors.hpp"
#include "sll/numerics.hpp"

namespace sll {

DiscreteOps::DiscreteOps(NodeLayout layout) : layout_(std::move(layout)) {
  const std::size_t nI = layout_.nxi(), nJ = layout_.nsig();
  if (nI < 3 || nJ < 3) throw InputError("layout needs at least three nodes per direction");
  if (layout_.y.size() != nI * nJ) throw InputError("layout coordinate array has the wrong size");
  axi_ = layout_.kind == GeometryKind::Axisymmetric;
  const auto& s = layout_.sigma;

  sig_.resize(nJ);
  for (std::size_t j = 0; j < nJ; ++j) {
    Stencil st;
    if (j == 0 && axi_) {
      const double xs[3] = {-s[0], s[0], s[1]};
      const auto w = num::derivative_weights(s[0], xs);
      st = {{0, 0, 1}, {w[0], w[1], w[2]}};
      row0_odd_ = {{0, 0, 1}, {-w[0], w[1], w[2]}};
      // f = c1 s^2 + c2 s^4 through nodes 0 and 1; f'(s0) is linear in (f0, f1).
      const double a = s[0] * s[0], b = s[1] * s[1];
      const double det = a * b * b - b * a * a;
      // c1 = (f0 b^2 - f1 a^2)/det, c2 = (f1 a - f0 b)/det
      const double d1 = 2.0 * s[0], d2 = 4.0 * s[0] * a;
      row0_zero_ = {{0, 0, 1}, {0.0, (d1 * b * b - d2 * b) / det, (-d1 * a * a + d2 * a) / det}};
    } else {
      const std::size_t j0 = (j == 0) ? 0 : (j + 1 == nJ ? j - 2 : j - 1);
      const double xs[3] = {s[j0], s[j0 + 1], s[j0 + 2]};
      const auto w = num::derivative_weights(s[j], xs);
      st = {{j0, j0 + 1, j0 + 2}, {w[0], w[1], w[2]}};
    }
    sig_[j] = st;
  }
  if (!axi_) {
    row0_odd_ = sig_[0];
    row0_zero_ = sig_[0];
  }

  y_xi_ = d_xi(layout_.y);
  y_sigma_ = d_sigma(layout_.y, Parity::Odd);
  for (double v : y_sigma_) {
    if (!(v > 0.0)) throw GeometryError("non-positive mapping Jacobian");
  }

  const double dxi = layout_.xi[1] - layout_.xi[0];
  xi_w_.assign(nI, dxi);
  xi_w_.front() = xi_w_.back() = 0.5 * dxi;
  sig_w_.resize(nJ);
  for (std::size_t j = 0; j < nJ; ++j) {
    const double lo = (j == 0) ? 0.0 : 0.5 * (s[j - 1] + s[j]);
    const double hi = (j + 1 == nJ) ? 1.0 : 0.5 * (s[j] + s[j + 1]);
    sig_w_[j] = hi - lo;
  }
  area_.resize(layout_.size());
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t j = 0; j < nJ; ++j) {
      const std::size_t k = layout_.idx(i, j);
      area_[k] = xi_w_[i] * sig_w_[j] * y_sigma_[k];
    }
  }

  // Station weights: solve D^T w = target.
  std::vector<double> D(nJ * nJ, 0.0);
  for (std::size_t j = 0; j < nJ; ++j) {
    const Stencil& st = sigma_stencil(j, Parity::EvenZero);
    for (int k = 0; k < 3; ++k) D[j * nJ + st.node[k]] += st.w[k];
  }
  if (axi_) {
    std::vector<double> At(nJ * nJ);
    for (std::size_t r = 0; r < nJ; ++r) {
      for (std::size_t c = 0; c < nJ; ++c) At[r * nJ + c] = D[c * nJ + r];
    }
    std::vector<double> target(nJ, 0.0);
    target.back() = 1.0;
    station_w_ = num::solve_dense(std::move(At), std::move(target));
  } else {
    // D annihilates constants; on a uniform layout the weights have a closed form.
    bool uniform = true;
    const double h = s[1] - s[0];
    for (std::size_t j = 1; j < nJ; ++j) uniform = uniform && std::fabs(s[j] - s[j - 1] - h) < 1e-12;
    if (!uniform || nJ < 5) throw InputError("planar layouts need at least 5 uniform sigma nodes");
    station_w_.assign(nJ, h);
    station_w_[0] = station_w_[nJ - 1] = 0.25 * h;
    station_w_[1] = station_w_[nJ - 2] = 1.25 * h;
  }
}

const DiscreteOps::Stencil& DiscreteOps::sigma_stencil(std::size_t j, Parity parity) const {
  if (j == 0 && axi_) {
    if (parity == Parity::Odd) return row0_odd_;
    if (parity == Parity::EvenZero) return row0_zero_;
  }
  return sig_[j];
}

double DiscreteOps::d_sigma_at(std::span<const double> f, std::size_t i, std::size_t j,
                               Parity parity) const {
  const Stencil& st = sigma_stencil(j, parity);
  const std::size_t base = layout_.idx(i, 0);
  return st.w[0] * f[base + st.node[0]] + st.w[1] * f[base + st.node[1]] +
         st.w[2] * f[base + st.node[2]];
}

double DiscreteOps::d_xi_at(std::span<const double> f, std::size_t i, std::size_t j) const {
  const std::size_t nI = layout_.nxi();
  const double h = layout_.xi[1] - layout_.xi[0];
  auto F = [&](std::size_t ii) { return f[layout_.idx(ii, j)]; };
  if (i == 0) return (-3.0 * F(0) + 4.0 * F(1) - F(2)) / (2.0 * h);
  if (i + 1 == nI) return (3.0 * F(i) - 4.0 * F(i - 1) + F(i - 2)) / (2.0 * h);
  return (F(i + 1) - F(i - 1)) / (2.0 * h);
}

std::vector<double> DiscreteOps::d_xi(std::span<const double> f) const {
  if (f.size() != size()) throw InputError("field size does not match the layout");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < layout_.nxi(); ++i) {
    for (std::size_t j = 0; j < layout_.nsig(); ++j) out[layout_.idx(i, j)] = d_xi_at(f, i, j);
  }
  return out;
}

std::vector<double> DiscreteOps::d_sigma(std::span<const double> f, Parity parity) const {
  if (f.size() != size()) throw InputError("field size does not match the layout");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < layout_.nxi(); ++i) {
    for (std::size_t j = 0; j < layout_.nsig(); ++j) {
      out[layout_.idx(i, j)] = d_sigma_at(f, i, j, parity);
    }
  }
  return out;
}

Gradient DiscreteOps::gradient(std::span<const double> f, Parity parity) const {
  Gradient g;
  g.fx = d_xi(f);
  g.fy = d_sigma(f, parity);
  for (std::size_t k = 0; k < size(); ++k) {
    const double fs = g.fy[k];
    g.fy[k] = fs / y_sigma_[k];
    g.fx[k] -= y_xi_[k] * g.fy[k];
  }
  return g;
}

std::vector<double> DiscreteOps::curl(std::span<const double> u1, std::span<const double> u2) const {
  const Gradient g1 = gradient(u1, Parity::Even);
  const Gradient g2 = gradient(u2, Parity::Odd);
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = g2.fx[k] - g1.fy[k];
  return out;
}

std::vector<double> DiscreteOps::station_flux(std::span<const double> fx) const {
  if (fx.size() != size()) throw InputError("field size does not match the layout");
  std::vector<double> out(layout_.nxi(), 0.0);
  for (std::size_t i = 0; i < layout_.nxi(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < layout_.nsig(); ++j) {
      const std::size_t k = layout_.idx(i, j);
      s += station_w_[j] * fx[k] * y_sigma_[k];
    }
    out[i] = s;
  }
  return out;
}

double DiscreteOps::interpolate(std::span<const double> f, double xi, double sigma) const {
  const auto& X = layout_.xi;
  const auto& S = layout_.sigma;
  auto locate = [](const std::vector<double>& v, double t) {
    std::size_t k = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
    k = std::clamp<std::size_t>(k, 1, v.size() - 1) - 1;
    const double w = std::clamp((t - v[k]) / (v[k + 1] - v[k]), 0.0, 1.0);
    return std::pair{k, w};
  };
  auto [i, a] = locate(X, xi);
  auto [j, b] = locate(S, sigma);
  auto F = [&](std::size_t ii, std::size_t jj) { return f[layout_.idx(ii, jj)]; };
  return (1 - a) * (1 - b) * F(i, j) + a * (1 - b) * F(i + 1, j) + (1 - a) * b * F(i, j + 1) +
         a * b * F(i + 1, j + 1);
}

}  // namespace sll
