#include "sll/numerics.hpp"

#include <algorithm>
#include <stdexcept>

#include "sll/errors.hpp"

namespace sll::num {

BisectResult bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                    int max_iter) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo * fhi > 0.0) throw DomainError("bisect: root not bracketed");
  return bisect_fast(f, lo, hi, rel_tol, max_iter);
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  // Seed with a coarse composite rule so that the tolerance is relative to the integral scale.
  const double coarse = simpson(f, a, b, 16);
  const double scale = std::max(std::fabs(coarse), 1e-300);
  const int pieces = 8;
  const double w = (b - a) / pieces;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * w;
    const double hi = (k + 1 == pieces) ? b : lo + w;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fhi = f(hi), fmid = f(mid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, rel_tol * scale / pieces,
                          max_depth);
  }
  return total;
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  }
  return s * h / 3.0;
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw InputError("solve_dense: size mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    }
    if (a[piv * n + c] == 0.0) throw SolverStateError("solve_dense: singular matrix");
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
  }
  return x;
}

namespace {

void check_knots(const std::vector<double>& x, const std::vector<double>& y, const char* who) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InputError(std::string(who) + ": need at least two samples of equal length");
  }
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (!(x[k] > x[k - 1])) throw InputError(std::string(who) + ": abscissae must increase");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw InputError(std::string(who) + ": non-finite sample");
  }
}

std::size_t find_segment(const std::vector<double>& x, double t) {
  if (t <= x.front()) return 0;
  if (t >= x.back()) return x.size() - 2;
  auto it = std::upper_bound(x.begin(), x.end(), t);
  return static_cast<std::size_t>(it - x.begin()) - 1;
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  check_knots(x_, y_, "CubicSpline");
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n < 3) return;
  // Thomas algorithm on the interior second derivatives.
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
}

std::size_t CubicSpline::segment(double t) const { return find_segment(x_, t); }

double CubicSpline::value(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double a = (x_[k + 1] - t) / h;
  const double b = (t - x_[k]) / h;
  return a * y_[k] + b * y_[k + 1] +
         ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
}

double CubicSpline::d1(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double a = (x_[k + 1] - t) / h;
  const double b = (t - x_[k]) / h;
  return (y_[k + 1] - y_[k]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[k] +
         (3.0 * b * b - 1.0) / 6.0 * h * m_[k + 1];
}

double CubicSpline::d2(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double a = (x_[k + 1] - t) / h;
  const double b = (t - x_[k]) / h;
  return a * m_[k] + b * m_[k + 1];
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  check_knots(x_, y_, "Pchip");
  const std::size_t n = x_.size();
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    del[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = del[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (del[k - 1] * del[k] <= 0.0) {
      d_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
    }
  }
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) {
      d = 0.0;
    } else if (del0 * del1 <= 0.0 && std::fabs(d) > std::fabs(3.0 * del0)) {
      d = 3.0 * del0;
    }
    return d;
  };
  d_[0] = end_slope(h[0], h[1], del[0], del[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t Pchip::segment(double t) const { return find_segment(x_, t); }

double Pchip::value(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
}

double Pchip::d1(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double g00 = 6.0 * s * s - 6.0 * s;
  const double g10 = 3.0 * s * s - 4.0 * s + 1.0;
  const double g01 = -g00;
  const double g11 = 3.0 * s * s - 2.0 * s;
  return (g00 * y_[k] + g01 * y_[k + 1]) / h + g10 * d_[k] + g11 * d_[k + 1];
}

double Pchip::d2(double t) const {
  const std::size_t k = segment(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double e00 = 12.0 * s - 6.0;
  const double e10 = 6.0 * s - 4.0;
  const double e11 = 6.0 * s - 2.0;
  return (e00 * (y_[k] - y_[k + 1]) / h + e10 * d_[k] + e11 * d_[k + 1]) / h;
}

std::vector<double> derivative_weights(double x0, std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double denom = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) denom *= xs[j] - xs[k];
    }
    // d/dx of prod_{k != j}(x - x_k), evaluated at x0.
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == j) continue;
      double prod = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j && k != l) prod *= x0 - xs[k];
      }
      sum += prod;
    }
    w[j] = sum / denom;
  }
  return w;
}

}  // namespace sll::num
