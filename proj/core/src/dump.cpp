#include "sll/dump.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "sll/errors.hpp"

namespace sll {

namespace {

constexpr int kColumns = 13;

std::vector<std::string> header(GeometryKind kind) {
  return {"x1", kind == GeometryKind::Axisymmetric ? "r" : "x2", "rho", "u1", "u2", "p", "q", "M",
          "B",  "S",  "psi", "label", "omega"};
}

[[noreturn]] void schema(const std::filesystem::path& path, std::size_t line, std::size_t col,
                         const std::string& what) {
  std::ostringstream os;
  os << path.string() << ": line " << line << ", column " << col << ": " << what;
  throw InputError(os.str());
}

}  // namespace

std::string dump_file_name(double m, std::size_t nx, std::size_t ns) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "solve_m%.10g_%zux%zu.dat", m, nx, ns);
  return buf;
}

void write_dump(const std::filesystem::path& path, const FlowField& flow) {
  std::FILE* fp = std::fopen(path.string().c_str(), "w");
  if (!fp) throw InputError("cannot open " + path.string() + " for writing");
  const auto h = header(flow.kind());
  for (std::size_t c = 0; c < h.size(); ++c) std::fprintf(fp, c ? " %s" : "%s", h[c].c_str());
  std::fputc('\n', fp);
  const auto& l = flow.layout;
  for (std::size_t i = 0; i < l.nxi(); ++i) {
    for (std::size_t j = 0; j < l.nsig(); ++j) {
      const std::size_t k = l.idx(i, j);
      const double row[kColumns] = {l.xi[i],     l.y[k],      flow.rho[k], flow.u1[k],   flow.u2[k],
                                    flow.p[k],   flow.q[k],   flow.mach[k], flow.B[k], flow.S[k],
                                    flow.psi[k], flow.label[k], flow.omega[k]};
      for (int c = 0; c < kColumns; ++c) std::fprintf(fp, c ? " %.17g" : "%.17g", row[c]);
      std::fputc('\n', fp);
    }
  }
  if (std::fclose(fp) != 0) throw InputError("failed writing " + path.string());
}

FlowField read_dump(const std::filesystem::path& path, const thermo::GasModel& gas) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open field dump " + path.string());
  std::string line;
  if (!std::getline(in, line)) schema(path, 1, 1, "missing header line");

  GeometryKind kind = GeometryKind::Planar;
  {
    std::istringstream hs(line);
    std::vector<std::string> names;
    for (std::string w; hs >> w;) names.push_back(w);
    if (names.size() > 1 && names[1] == "r") kind = GeometryKind::Axisymmetric;
    const auto want = header(kind);
    for (std::size_t c = 0; c < std::max(names.size(), want.size()); ++c) {
      if (c >= names.size()) schema(path, 1, c + 1, "missing column '" + want[c] + "'");
      if (c >= want.size()) schema(path, 1, c + 1, "unexpected column '" + names[c] + "'");
      if (names[c] != want[c]) schema(path, 1, c + 1, "expected '" + want[c] + "', found '" + names[c] + "'");
    }
  }

  std::vector<std::array<double, kColumns>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::array<double, kColumns> r{};
    const char* s = line.c_str();
    for (int c = 0; c < kColumns; ++c) {
      char* end = nullptr;
      r[c] = std::strtod(s, &end);
      if (end == s) schema(path, lineno, c + 1, c ? "missing or malformed value" : "malformed value");
      s = end;
    }
    while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
    if (*s) schema(path, lineno, kColumns + 1, "extra data after last column");
    rows.push_back(r);
  }
  if (rows.empty()) schema(path, 2, 1, "no data rows");

  std::size_t nsig = 1;
  while (nsig < rows.size() && rows[nsig][0] == rows[0][0]) ++nsig;
  if (rows.size() % nsig != 0) schema(path, rows.size() + 1, 1, "row count is not a multiple of the column length");
  const std::size_t nxi = rows.size() / nsig;
  if (nxi < 3 || nsig < 3) schema(path, 2, 1, "grid needs at least three nodes per direction");

  FlowField f;
  f.homentropic = gas.homentropic();
  if (!gas.homentropic()) f.gamma = gas.gamma();
  f.layout.kind = kind;
  f.layout.sigma = sigma_nodes(kind, nsig - 1);
  f.layout.xi.resize(nxi);
  f.resize();
  f.layout.y.resize(rows.size());
  for (std::size_t i = 0; i < nxi; ++i) {
    f.layout.xi[i] = rows[i * nsig][0];
    for (std::size_t j = 0; j < nsig; ++j) {
      const std::size_t k = i * nsig + j;
      const auto& r = rows[k];
      if (r[0] != f.layout.xi[i]) schema(path, k + 2, 1, "x1 varies within a station");
      if (j > 0 && !(r[1] > rows[k - 1][1])) schema(path, k + 2, 2, "transverse coordinate not increasing");
      f.layout.y[k] = r[1];
      f.rho[k] = r[2];
      f.u1[k] = r[3];
      f.u2[k] = r[4];
      f.p[k] = r[5];
      f.q[k] = r[6];
      f.mach[k] = r[7];
      f.B[k] = r[8];
      f.S[k] = r[9];
      f.psi[k] = r[10];
      f.label[k] = r[11];
      f.omega[k] = r[12];
    }
    if (i > 0 && !(f.layout.xi[i] > f.layout.xi[i - 1])) schema(path, i * nsig + 2, 1, "x1 not increasing");
  }
  return f;
}

}  // namespace sll
