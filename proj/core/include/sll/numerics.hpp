#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sll::num {

struct BisectResult {
  double x;
  int iterations;
};

// Root of a monotone f on [lo, hi] with f(lo), f(hi) of opposite sign (or zero).
// Stops when the bracket is below rel_tol*max(|lo|,|hi|) or cannot shrink further.
BisectResult bisect(const std::function<double(double)>& f, double lo, double hi,
                    double rel_tol = 1e-12, int max_iter = 200);

// Same, templated for hot loops.
template <class F>
BisectResult bisect_fast(F&& f, double lo, double hi, double rel_tol = 0.0, int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return {lo, 0};
  double fhi = f(hi);
  if (fhi == 0.0) return {hi, 0};
  const bool rising = fhi > flo;
  int it = 0;
  for (; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, it + 1};
    if ((fm < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * std::max(std::fabs(lo), std::fabs(hi))) break;
  }
  return {0.5 * (lo + hi), it};
}

// Adaptive Simpson on [a, b] with relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int max_depth = 40);

// Composite Simpson on n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels);

// Gaussian elimination with partial pivoting; a is row-major n*n, overwritten.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

// Natural cubic spline, C2.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

 private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

// Monotone piecewise cubic Hermite (Fritsch-Carlson).
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slopes() const { return d_; }

 private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, d_;
};

// Lagrange weights for the first derivative at x0 through nodes xs.
std::vector<double> derivative_weights(double x0, std::span<const double> xs);

}  // namespace sll::num
