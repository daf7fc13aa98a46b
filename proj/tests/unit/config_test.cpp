#include <filesystem>
#include <fstream>

#include "config.hpp"
#include "doctest.h"
#include "sll/errors.hpp"
#include "toml.hpp"

using namespace sll;
using namespace sll::cli;
using doctest::Approx;

namespace {

std::string error_of(const std::string& text) {
  try {
    config_from_toml(parse_toml(text), ".");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("toml subset") {
  const auto doc = parse_toml(R"(top = 1
# comment
[a]
x = -2.5e-1   # trailing
flag = true
name = "hello # not a comment"
arr = [1, 2.5, 3]
[b.c]
y = 4
)");
  CHECK(std::get<double>(doc.at("").at("top").v) == 1.0);
  CHECK(std::get<double>(doc.at("a").at("x").v) == -0.25);
  CHECK(std::get<bool>(doc.at("a").at("flag").v));
  CHECK(std::get<std::string>(doc.at("a").at("name").v) == "hello # not a comment");
  CHECK(std::get<std::vector<double>>(doc.at("a").at("arr").v) == std::vector<double>{1, 2.5, 3});
  CHECK(doc.at("b.c").at("y").line == 9);
  CHECK_THROWS_AS(parse_toml("[a]\nx = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("[a]\n[a]\n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("x = \n"), ConfigError);
  CHECK_THROWS_AS(parse_toml("x = [1, \"a\"]\n"), ConfigError);
}

TEST_CASE("full configuration") {
  const auto cfg = config_from_toml(parse_toml(R"(
[gas]
model = "full_euler"
gamma = 2.0
[nozzle]
kind = "planar"
shape = "tanh_contraction"
amplitude = 0.3
center = 0.0
width = 1.0
[upstream]
B = [1.0, 0.0, 0.05]
S = 1.0
[solver]
nx = 48
ns = 12
x1_min = -8
x1_max = 8
relax = 0.4
[sweep]
m_start = 0.2
)"), ".");
  CHECK(cfg.gas.gamma() == 2.0);
  CHECK(cfg.nozzle.width(8.0) == Approx(0.7).epsilon(1e-6));
  CHECK(cfg.upstream.B.value(1.0) == Approx(1.05));
  CHECK(cfg.nx == 48);
  CHECK(cfg.picard.relax == 0.4);
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->m_start == 0.2);
  CHECK(cfg.sweep->mach_target == 0.99);
}

TEST_CASE("homentropic and tabulated inputs") {
  const auto dir = std::filesystem::temp_directory_path() / "sll_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "law.dat");
    out << "# rho p\n";
    for (int k = 0; k <= 100; ++k) out << 0.05 * k << " " << 0.0025 * k * k << "\n";
  }
  const auto cfg = config_from_toml(parse_toml(R"(
[gas]
model = "homentropic"
law = "tabulated"
table = "law.dat"
[nozzle]
kind = "axisymmetric"
shape = "straight"
[upstream]
B = 1.0
)"), dir);
  CHECK(cfg.gas.homentropic());
  CHECK(cfg.gas.law().kind() == thermo::PressureLaw::Kind::Tabulated);
  CHECK(cfg.nozzle.kind() == GeometryKind::Axisymmetric);
  std::filesystem::remove_all(dir);
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_of("[gas]\nmodel = \"full_euler\"\ngama = 1.4\n").find("3") != std::string::npos);
  CHECK(error_of("[gas]\nmodel = \"plasma\"\n").find("2") != std::string::npos);
  CHECK_FALSE(error_of("[gas]\nmodel = \"full_euler\"\n[nozzle]\nshape = \"tanh_contraction\"\n"
                       "amplitude = 1.5\n[upstream]\nB = 1.0\n").empty());
  CHECK_FALSE(error_of("[sweep]\nm_tol = 1e-3\n").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), ConfigError);
}

}  // TEST_SUITE
