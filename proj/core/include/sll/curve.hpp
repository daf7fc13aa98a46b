#pragma once

#include <string>
#include <vector>

#include "sll/numerics.hpp"

namespace sll {

// Scalar function of one variable with two derivatives. Used for wall shapes and upstream profiles.
class Curve {
 public:
  enum class Kind { Constant, Polynomial, TanhStep, Tabulated };

  Curve() : coeffs_{0.0} {}

  static Curve constant(double c);
  // c[0] + c[1] x + c[2] x^2 + ...
  static Curve polynomial(std::vector<double> coeffs);
  // base + amplitude * (1 + tanh((x - center) / width)) / 2
  static Curve tanh_step(double base, double amplitude, double center, double width);
  // Natural cubic spline through samples; evaluation outside the sample range throws.
  static Curve tabulated(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  Kind kind() const { return kind_; }
  bool closed_form() const { return kind_ != Kind::Tabulated; }
  bool covers(double a, double b) const;
  // Limits as x -> -inf / +inf when they exist (NaN otherwise).
  double left_limit() const;
  double right_limit() const;
  std::string describe() const;

 private:
  void check(double x) const;

  Kind kind_ = Kind::Constant;
  std::vector<double> coeffs_;
  double base_ = 0.0, amplitude_ = 0.0, center_ = 0.0, width_ = 1.0;
  num::CubicSpline spline_;
};

}  // namespace sll
