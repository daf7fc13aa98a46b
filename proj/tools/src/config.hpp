#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sll/limits.hpp"
#include "toml.hpp"

namespace sll::cli {

struct SweepBlock {
  double m_start = 0.0;
  double m_tol = 1e-4;
  double mach_target = 0.99;
  std::size_t max_solves = 60;
};

struct RunConfig {
  thermo::GasModel gas = thermo::GasModel::full_euler(1.4);
  Nozzle nozzle;
  UpstreamData upstream;
  std::size_t nx = 64;
  std::size_t ns = 32;
  double x1_min = -20.0;
  double x1_max = 20.0;
  double tol_far = 1e-6;
  PicardOptions picard;
  std::optional<SweepBlock> sweep;
  std::optional<std::string> output_dir;
  bool dumps = true;

  ProblemSetup setup() const { return {nozzle, upstream, gas, nx, ns, x1_min, x1_max}; }
};

RunConfig load_config(const std::filesystem::path& path);
// Relative table paths resolve against base_dir.
RunConfig config_from_toml(const TomlDocument& doc, const std::filesystem::path& base_dir);

// Two whitespace-separated numeric columns; '#' starts a comment.
std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::filesystem::path& path);

}  // namespace sll::cli
