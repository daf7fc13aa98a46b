#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sll {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a state relation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// No subsonic root exists for the requested data.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class LinearSolverError : public Error {
 public:
  LinearSolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Internal inconsistency during an iteration (label out of range, non-SPD operator, ...).
class SolverStateError : public Error {
 public:
  using Error::Error;
};

struct SonicLocation {
  std::size_t node = static_cast<std::size_t>(-1);
  double x1 = 0.0;
  double x2 = 0.0;
};

// Local mass-flux density above the sonic maximum.
class SonicExceeded : public Error {
 public:
  using Where = SonicLocation;

  SonicExceeded(const std::string& what, double j_max, double ratio)
      : Error(what), j_max_(j_max), ratio_(ratio) {}
  SonicExceeded(const std::string& what, double j_max, double ratio, Where where)
      : Error(what), j_max_(j_max), ratio_(ratio), where_(where) {}

  double j_max() const { return j_max_; }
  // j / j_max for flux blockage, M / mach_cap for the Mach cap.
  double ratio() const { return ratio_; }
  const Where& where() const { return where_; }
  bool located() const { return where_.node != static_cast<std::size_t>(-1); }

 private:
  double j_max_;
  double ratio_;
  Where where_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace sll
