#include "sll/curve.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sll/errors.hpp"

namespace sll {

Curve Curve::constant(double c) {
  Curve out;
  out.kind_ = Kind::Constant;
  out.coeffs_ = {c};
  return out;
}

Curve Curve::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  Curve out;
  out.kind_ = Kind::Polynomial;
  out.coeffs_ = std::move(coeffs);
  return out;
}

Curve Curve::tanh_step(double base, double amplitude, double center, double width) {
  if (!(width > 0.0)) throw InputError("tanh step width must be positive");
  Curve out;
  out.kind_ = Kind::TanhStep;
  out.base_ = base;
  out.amplitude_ = amplitude;
  out.center_ = center;
  out.width_ = width;
  return out;
}

Curve Curve::tabulated(std::vector<double> x, std::vector<double> y) {
  Curve out;
  out.kind_ = Kind::Tabulated;
  out.spline_ = num::CubicSpline(std::move(x), std::move(y));
  return out;
}

void Curve::check(double x) const {
  if (kind_ != Kind::Tabulated) return;
  const double span = spline_.x_max() - spline_.x_min();
  const double slack = 1e-12 * span;
  if (x < spline_.x_min() - slack || x > spline_.x_max() + slack) {
    std::ostringstream os;
    os << "tabulated curve evaluated at " << x << " outside [" << spline_.x_min() << ", "
       << spline_.x_max() << "]";
    throw DomainError(os.str());
  }
}

bool Curve::covers(double a, double b) const {
  if (kind_ != Kind::Tabulated) return true;
  const double slack = 1e-12 * (spline_.x_max() - spline_.x_min());
  return a >= spline_.x_min() - slack && b <= spline_.x_max() + slack;
}

double Curve::value(double x) const {
  check(x);
  switch (kind_) {
    case Kind::Constant:
      return coeffs_[0];
    case Kind::Polynomial: {
      double s = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * x + *it;
      return s;
    }
    case Kind::TanhStep:
      return base_ + 0.5 * amplitude_ * (1.0 + std::tanh((x - center_) / width_));
    case Kind::Tabulated:
      return spline_.value(x);
  }
  return 0.0;
}

double Curve::d1(double x) const {
  check(x);
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Polynomial: {
      double s = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;) s = s * x + static_cast<double>(k) * coeffs_[k];
      return s;
    }
    case Kind::TanhStep: {
      const double t = std::tanh((x - center_) / width_);
      return 0.5 * amplitude_ * (1.0 - t * t) / width_;
    }
    case Kind::Tabulated:
      return spline_.d1(x);
  }
  return 0.0;
}

double Curve::d2(double x) const {
  check(x);
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Polynomial: {
      double s = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 2;) {
        s = s * x + static_cast<double>(k * (k - 1)) * coeffs_[k];
      }
      return s;
    }
    case Kind::TanhStep: {
      const double t = std::tanh((x - center_) / width_);
      return -amplitude_ * t * (1.0 - t * t) / (width_ * width_);
    }
    case Kind::Tabulated:
      return spline_.d2(x);
  }
  return 0.0;
}

double Curve::left_limit() const {
  switch (kind_) {
    case Kind::Constant:
      return coeffs_[0];
    case Kind::Polynomial:
      for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0.0) return std::numeric_limits<double>::quiet_NaN();
      }
      return coeffs_[0];
    case Kind::TanhStep:
      return base_;
    case Kind::Tabulated:
      return spline_.y().front();
  }
  return 0.0;
}

double Curve::right_limit() const {
  switch (kind_) {
    case Kind::TanhStep:
      return base_ + amplitude_;
    case Kind::Tabulated:
      return spline_.y().back();
    default:
      return left_limit();
  }
}

std::string Curve::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << coeffs_[0] << ")";
      break;
    case Kind::Polynomial:
      os << "polynomial(";
      for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? ", " : "") << coeffs_[k];
      os << ")";
      break;
    case Kind::TanhStep:
      os << "tanh_step(base=" << base_ << ", amplitude=" << amplitude_ << ", center=" << center_
         << ", width=" << width_ << ")";
      break;
    case Kind::Tabulated:
      os << "tabulated(" << spline_.x().size() << " samples on [" << spline_.x_min() << ", "
         << spline_.x_max() << "])";
      break;
  }
  return os.str();
}

}  // namespace sll
