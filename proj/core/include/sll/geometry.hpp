#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sll/curve.hpp"

namespace sll {

enum class GeometryKind { Planar, Axisymmetric };

std::string to_string(GeometryKind kind);

// Planar channel between f1 < f2, or axisymmetric pipe of radius f about r = 0.
class Nozzle {
 public:
  static Nozzle planar(Curve f1, Curve f2);
  static Nozzle axisymmetric(Curve f);
  static Nozzle straight(GeometryKind kind);
  // f2 (or f) = 1 - amplitude * (1 + tanh((x - center)/width)) / 2, f1 = 0.
  static Nozzle tanh_contraction(GeometryKind kind, double amplitude, double center, double width);

  GeometryKind kind() const { return kind_; }
  const Curve& lower() const { return lower_; }
  const Curve& upper() const { return upper_; }

  // Transverse mapping y = base(x) + sigma * width(x).
  double base(double x) const { return lower_.value(x); }
  double base_d1(double x) const { return lower_.d1(x); }
  double width(double x) const { return upper_.value(x) - lower_.value(x); }
  double width_d1(double x) const { return upper_.d1(x) - lower_.d1(x); }

  std::string describe() const;

 private:
  GeometryKind kind_ = GeometryKind::Planar;
  Curve lower_ = Curve::constant(0.0);
  Curve upper_ = Curve::constant(1.0);
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::optional<double> location;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  double min_gap = 0.0;
  double min_gap_location = 0.0;
  double downstream_lower = 0.0;  // a (0 for axisymmetric)
  double downstream_upper = 0.0;  // b, or r0 for axisymmetric
  double exterior_sphere_radius = 0.0;  // informational
  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
};

ValidationReport validate_nozzle(const Nozzle& nozzle, double x1_min, double x1_max,
                                 double tol_far = 1e-6, double deriv_bound = 1e3,
                                 std::size_t samples = 20001);

// Node coordinates of a tensor-product (xi, sigma) grid; rows are indexed i-major.
struct NodeLayout {
  GeometryKind kind = GeometryKind::Planar;
  std::vector<double> xi;
  std::vector<double> sigma;
  std::vector<double> y;

  std::size_t nxi() const { return xi.size(); }
  std::size_t nsig() const { return sigma.size(); }
  std::size_t size() const { return xi.size() * sigma.size(); }
  std::size_t idx(std::size_t i, std::size_t j) const { return i * sigma.size() + j; }
};

struct Metric {
  double y_xi;
  double y_sigma;
};

class Grid {
 public:
  GeometryKind kind() const { return layout_.kind; }
  std::size_t nx() const { return layout_.nxi() - 1; }
  std::size_t ns() const { return ns_; }
  std::size_t nxi() const { return layout_.nxi(); }
  std::size_t nsig() const { return layout_.nsig(); }
  std::size_t size() const { return layout_.size(); }
  std::size_t idx(std::size_t i, std::size_t j) const { return layout_.idx(i, j); }
  double x1_min() const { return layout_.xi.front(); }
  double x1_max() const { return layout_.xi.back(); }
  double dxi() const { return layout_.xi[1] - layout_.xi[0]; }
  double xi(std::size_t i) const { return layout_.xi[i]; }
  double sigma(std::size_t j) const { return layout_.sigma[j]; }
  double y(std::size_t i, std::size_t j) const { return layout_.y[idx(i, j)]; }
  const NodeLayout& layout() const { return layout_; }
  const Nozzle& nozzle() const { return nozzle_; }

  // Analytic metric at a node or at an arbitrary (xi, sigma).
  const Metric& metric(std::size_t i, std::size_t j) const { return metric_[idx(i, j)]; }
  Metric metric_at(double xi, double sigma) const;
  // Centered finite-difference metrics from node coordinates (one-sided at the ends).
  std::vector<Metric> finite_difference_metrics() const;

  // Parameter coordinates of a physical point.
  std::pair<double, double> locate(double x1, double y) const;
  std::pair<std::size_t, std::size_t> nearest_node(double x1, double y) const;

  friend Grid build_grid(const Nozzle&, std::size_t, std::size_t, double, double);

 private:
  Nozzle nozzle_;
  NodeLayout layout_;
  std::size_t ns_ = 0;
  std::vector<Metric> metric_;
};

// Planar: sigma_j = j/ns. Axisymmetric: sigma_j = (j + 1/2)/ns for j < ns, plus the wall node sigma = 1.
Grid build_grid(const Nozzle& nozzle, std::size_t nx, std::size_t ns, double x1_min, double x1_max);

std::vector<double> sigma_nodes(GeometryKind kind, std::size_t ns);

}  // namespace sll
