#include <algorithm>
#include <cmath>
#include <map>

#include "sll/errors.hpp"
#include "sll/limits.hpp"

namespace sll {

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Accepted: return "accepted";
    case EntryStatus::NearSonic: return "near_sonic";
    case EntryStatus::SonicExceeded: return "sonic_exceeded";
    case EntryStatus::Diverged: return "diverged";
    case EntryStatus::Failed: return "failed";
  }
  return "failed";
}

namespace {

struct Attempt {
  SweepEntry entry;
  std::optional<StreamSolution> solution;
};

Attempt attempt(const Grid& grid, const ProblemSetup& setup, double m, const SweepOptions& opt,
                std::span<const double> guess) {
  Attempt a;
  a.entry.m = m;
  try {
    StreamSolution s = picard_solve(grid, setup.upstream, setup.gas, m, opt.picard, guess);
    a.entry.max_mach = s.max_mach;
    a.entry.iterations = s.iterations;
    a.entry.status = s.max_mach <= opt.mach_target ? EntryStatus::Accepted : EntryStatus::NearSonic;
    a.solution = std::move(s);
  } catch (const SonicExceeded& e) {
    a.entry.status = EntryStatus::SonicExceeded;
    a.entry.message = e.what();
  } catch (const DivergenceError& e) {
    a.entry.status = EntryStatus::Diverged;
    a.entry.iterations = e.history().size();
    a.entry.message = e.what();
  } catch (const Error& e) {
    a.entry.status = EntryStatus::Failed;
    a.entry.message = e.what();
  }
  return a;
}

}  // namespace

SweepReport sweep_to_sonic(const ProblemSetup& setup, double m_start, const SweepOptions& opt) {
  if (!(opt.m_tol > 0.0)) throw ConfigError("sweep m_tol must be positive");
  if (!(opt.mach_target > 0.0 && opt.mach_target < 1.0)) {
    throw ConfigError("sweep mach_target must lie in (0, 1)");
  }
  const Grid grid = build_grid(setup.nozzle, setup.nx, setup.ns, setup.x1_min, setup.x1_max);

  SweepReport rep;
  rep.m_tol = opt.m_tol;
  rep.nx = setup.nx;
  rep.ns = setup.ns;
  const std::size_t panels =
      opt.picard.upstream_panels ? opt.picard.upstream_panels : std::max<std::size_t>(256, 4 * setup.ns);
  rep.upstream_max_flux = max_upstream_flux(setup.upstream, setup.gas, grid.kind(), panels + panels % 2);

  std::map<double, FlowField> flows;  // accepted, by m
  std::map<double, std::vector<double>> psi;
  std::vector<SweepEntry> entries;

  auto run = [&](double m) {
    std::vector<double> guess;
    if (!psi.empty()) {
      auto it = psi.upper_bound(m);
      if (it != psi.begin()) --it;
      guess = it->second;
      for (double& v : guess) v *= m / it->first;
    }
    Attempt a = attempt(grid, setup, m, opt, guess);
    const bool ok = a.entry.status == EntryStatus::Accepted;
    if (ok) {
      psi[m] = a.solution->flow.psi;
      flows.emplace(m, std::move(a.solution->flow));
    }
    entries.push_back(std::move(a.entry));
    return ok;
  };

  if (!(m_start > 0.0) || !run(m_start)) {
    const std::string why = entries.empty() ? "non-positive mass flux" : entries.back().message;
    throw InfeasibleError("sweep start m = " + std::to_string(m_start) + " is not feasible: " + why);
  }
  double lo = m_start;
  double hi = rep.upstream_max_flux;
  if (hi <= lo) throw InfeasibleError("sweep start lies at or above the upstream flux limit");
  if (run(hi)) {
    // The parallel state is sonic at the cap; an accepted solve there is reported as is.
    lo = hi;
  }
  while (hi - lo > opt.m_tol && entries.size() < opt.max_solves) {
    const double mid = 0.5 * (lo + hi);
    if (run(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  rep.m_lo = lo;
  rep.m_hi = hi;
  rep.bracket_achieved = hi - lo <= opt.m_tol && lo < hi;

  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  const FlowField* prev = nullptr;
  for (auto& e : entries) {
    if (e.status != EntryStatus::Accepted) continue;
    const FlowField& f = flows.at(e.m);
    e.diagnostics = diagnose(f, setup.gas, prev);
    prev = &f;
    rep.last_accepted_max_mach = e.max_mach;
  }
  rep.entries = std::move(entries);
  for (auto& [m, f] : flows) rep.accepted.push_back(std::move(f));
  return rep;
}

}  // namespace sll
