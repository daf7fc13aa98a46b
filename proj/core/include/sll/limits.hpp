#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sll/field.hpp"
#include "sll/solver.hpp"

namespace sll {

// Rectangle in (x1, sigma).
struct Window {
  double xi_lo, xi_hi, sigma_lo, sigma_hi;
  // Middle `fraction` of the domain in both directions.
  static Window middle(const NodeLayout& layout, double fraction = 0.5);
};

// Tensor bump (1 - t^2)^4 in each parameter direction.
struct TestBump {
  double xi_c, xi_half;
  double sigma_c, sigma_half;
  double value(double xi, double sigma) const;
};

// 3 x 3 placements (x1 at the quarter points, sigma at 0.3, 0.5, 0.7), two widths each.
std::vector<TestBump> default_test_family(const NodeLayout& layout);

struct WeakResiduals {
  double mass = 0.0;
  double momentum1 = 0.0;
  double momentum2 = 0.0;
  std::optional<double> energy;  // full Euler only
  double max_momentum() const { return std::max(momentum1, momentum2); }
};

// max over test functions of |sum_nodes A F . grad(phi)| / sum_nodes A |grad(phi)|
WeakResiduals weak_residuals(const FlowField& flow, std::span<const TestBump> family);

// sum over window nodes of |discrete curl u| * area (times r for axisymmetric layouts)
double curl_tv(const FlowField& flow, const Window& window);
// Same integral of |flow.omega| (the streamline vorticity formula).
double omega_tv(const FlowField& flow, const Window& window);
// Same integral of |discrete curl u - flow.omega|.
double curl_defect(const FlowField& flow, const Window& window);

struct VelocitySample {
  std::vector<double> u;
  double weight;
};

struct ConcentrationStats {
  double pairing_stat = 0.0;
  double speed_variance = 0.0;
};

ConcentrationStats concentration(std::span<const VelocitySample> sample, const thermo::GasModel& gas,
                                 double B, double S);

// Fixed sample stations (x1, sigma): 5 x 3 points in the middle half of the domain.
std::vector<std::pair<double, double>> default_stations(const NodeLayout& layout);

// Empirical measure of the velocities of a sequence of fields at the stations; the statistics
// are maximised over stations. B and S are taken from the last field.
ConcentrationStats sequence_concentration(std::span<const FlowField* const> sequence,
                                          std::span<const double> weights,
                                          const thermo::GasModel& gas);

// L1 norm over interior nodes of |grad B - (u x omega) - rho^(gamma-1)/gamma grad S| with omega the
// discrete curl; the S term is dropped for homentropic fields.
double bernoulli_gradient_check(const FlowField& flow, const Window* window = nullptr);

struct BoundaryTrace {
  double lower = 0.0;  // lower wall, or the axis for axisymmetric layouts
  double upper = 0.0;
  double max() const { return std::max(lower, upper); }
};

// |sum A (rho u) . grad(phi)| for phi = bump(x1) * (1 - d/w)^4 near each wall, maximised over placements.
BoundaryTrace boundary_trace(const FlowField& flow, double layer = 0.25);

struct FieldBounds {
  double max_mach = 0.0;
  double sup_B = 0.0, inf_B = 0.0;
  double sup_S = 0.0, inf_S = 0.0;  // NaN for homentropic fields
};

FieldBounds field_bounds(const FlowField& flow, const Window& window);

struct DiagnosticsBundle {
  WeakResiduals weak;
  double curl_tv = 0.0;
  FieldBounds bounds;
  std::optional<ConcentrationStats> concentration;  // against the preceding member of a sequence
  BoundaryTrace trace;
  double bernoulli_defect = 0.0;
  bool b_min_unbounded = false;
};

DiagnosticsBundle diagnose(const FlowField& flow, const thermo::GasModel& gas,
                           const FlowField* previous = nullptr);

// ------------------------------------------------------------------------------- sweep

struct ProblemSetup {
  Nozzle nozzle;
  UpstreamData upstream;
  thermo::GasModel gas = thermo::GasModel::full_euler(1.4);
  std::size_t nx = 64;
  std::size_t ns = 32;
  double x1_min = -20.0;
  double x1_max = 20.0;
};

struct SweepOptions {
  double mach_target = 0.99;
  double m_tol = 1e-4;
  std::size_t max_solves = 60;
  PicardOptions picard;
};

enum class EntryStatus { Accepted, NearSonic, SonicExceeded, Diverged, Failed };

std::string to_string(EntryStatus s);

struct SweepEntry {
  double m = 0.0;
  EntryStatus status = EntryStatus::Failed;
  double max_mach = 0.0;
  std::size_t iterations = 0;
  std::string message;
  std::optional<DiagnosticsBundle> diagnostics;
};

struct SweepReport {
  std::vector<SweepEntry> entries;  // ordered by m
  double m_lo = 0.0;                // largest accepted m
  double m_hi = 0.0;                // smallest rejected m
  double m_tol = 0.0;
  bool bracket_achieved = false;
  double last_accepted_max_mach = 0.0;
  double upstream_max_flux = 0.0;
  std::size_t nx = 0, ns = 0;
  std::vector<FlowField> accepted;  // ordered by m
  std::string sequence = "mass-flux sweep at fixed grid";
  std::string outlet_condition = "zero streamwise gradient of psi at x1_max";
};

SweepReport sweep_to_sonic(const ProblemSetup& setup, double m_start, const SweepOptions& opt = {});

}  // namespace sll
