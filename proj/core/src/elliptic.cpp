#include <algorithm>
#include <cmath>
#include <sstream>

#include "sll/errors.hpp"
#include "sll/solver.hpp"

namespace sll {

namespace {

double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

// Five-point operator in (xi, sigma) with the cross-metric fluxes kept separately.
struct Assembly {
  std::size_t nI = 0, nJ = 0;
  std::vector<char> known;
  std::vector<double> diag, cw, ce, cs, cn;  // couplings to unknown neighbours only
  std::vector<double> rhs0;                   // source plus Dirichlet couplings
  // cross-flux coefficients: xi-faces (i+1/2, j) and sigma-faces (i, j+1/2)
  std::vector<double> xcross, scross;
  bool has_cross = false;
};

Assembly assemble(const Grid& grid, const DiscreteOps& ops, std::span<const double> rho,
                  std::span<const double> omega, std::span<const double> psi_known) {
  Assembly A;
  const std::size_t nI = grid.nxi(), nJ = grid.nsig(), N = grid.size();
  A.nI = nI;
  A.nJ = nJ;
  const bool axi = grid.kind() == GeometryKind::Axisymmetric;
  const auto& S = grid.layout().sigma;
  const auto& xw = ops.xi_widths();
  const auto& sw = ops.sigma_widths();
  const double dxi = grid.dxi();

  std::vector<double> k(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double r = axi ? grid.layout().y[n] : 1.0;
    const double kk = 1.0 / (r * rho[n]);
    if (!(rho[n] > 0.0) || !std::isfinite(kk) || !(kk > 0.0)) {
      std::ostringstream os;
      os << "elliptic operator is not SPD: rho = " << rho[n] << " at node " << n;
      throw SolverStateError(os.str());
    }
    k[n] = kk;
  }

  A.known.assign(N, 0);
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t j = 0; j < nJ; ++j) {
      const bool wall = (j + 1 == nJ) || (!axi && j == 0);
      if (i == 0 || wall) A.known[grid.idx(i, j)] = 1;
    }
  }

  // Face coefficients.
  std::vector<double> fx((nI - 1) * nJ), fs(nI * (nJ - 1));
  A.xcross.assign((nI - 1) * nJ, 0.0);
  A.scross.assign(nI * (nJ - 1), 0.0);
  for (std::size_t i = 0; i + 1 < nI; ++i) {
    const double xf = grid.xi(i) + 0.5 * dxi;
    for (std::size_t j = 0; j < nJ; ++j) {
      const Metric mt = grid.metric_at(xf, S[j]);
      const double kf = harmonic(k[grid.idx(i, j)], k[grid.idx(i + 1, j)]);
      fx[i * nJ + j] = kf * mt.y_sigma / dxi * sw[j];
      A.xcross[i * nJ + j] = kf * mt.y_xi * sw[j];
      if (mt.y_xi != 0.0) A.has_cross = true;
    }
  }
  for (std::size_t i = 0; i < nI; ++i) {
    for (std::size_t j = 0; j + 1 < nJ; ++j) {
      const double sf = 0.5 * (S[j] + S[j + 1]);
      const Metric mt = grid.metric_at(grid.xi(i), sf);
      const double kf = harmonic(k[grid.idx(i, j)], k[grid.idx(i, j + 1)]);
      fs[i * (nJ - 1) + j] = kf * (1.0 + mt.y_xi * mt.y_xi) / mt.y_sigma / (S[j + 1] - S[j]) * xw[i];
      A.scross[i * (nJ - 1) + j] = kf * mt.y_xi * xw[i];
      if (mt.y_xi != 0.0) A.has_cross = true;
    }
  }

  A.diag.assign(N, 0.0);
  A.cw.assign(N, 0.0);
  A.ce.assign(N, 0.0);
  A.cs.assign(N, 0.0);
  A.cn.assign(N, 0.0);
  A.rhs0.assign(N, 0.0);
  for (std::size_t i = 0; i < nI; ++i) {
    const double g = grid.nozzle().width(grid.xi(i));
    for (std::size_t j = 0; j < nJ; ++j) {
      const std::size_t P = grid.idx(i, j);
      if (A.known[P]) continue;
      double d = 0.0;
      double b = g * omega[P] * xw[i] * sw[j];
      auto couple = [&](double c, std::size_t nb, double& slot) {
        d += c;
        if (A.known[nb]) {
          b += c * psi_known[nb];
        } else {
          slot = c;
        }
      };
      if (i > 0) couple(fx[(i - 1) * nJ + j], grid.idx(i - 1, j), A.cw[P]);
      if (i + 1 < nI) couple(fx[i * nJ + j], grid.idx(i + 1, j), A.ce[P]);
      if (j > 0) couple(fs[i * (nJ - 1) + j - 1], grid.idx(i, j - 1), A.cs[P]);
      if (j + 1 < nJ) couple(fs[i * (nJ - 1) + j], grid.idx(i, j + 1), A.cn[P]);
      if (axi && j == 0) {
        // psi ~ c s^2 near the axis: flux through r = 0 is 2 psi_0 / (s_0^2 g^2 rho_0).
        d += 2.0 / (S[0] * S[0] * g * g * rho[P]) * xw[i];
      }
      A.diag[P] = d;
      A.rhs0[P] = b;
    }
  }
  return A;
}

void apply(const Assembly& A, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t nJ = A.nJ;
  for (std::size_t i = 0; i < A.nI; ++i) {
    for (std::size_t j = 0; j < nJ; ++j) {
      const std::size_t P = i * nJ + j;
      if (A.known[P]) {
        y[P] = 0.0;
        continue;
      }
      double v = A.diag[P] * x[P];
      if (A.cw[P] != 0.0) v -= A.cw[P] * x[P - nJ];
      if (A.ce[P] != 0.0) v -= A.ce[P] * x[P + nJ];
      if (A.cs[P] != 0.0) v -= A.cs[P] * x[P - 1];
      if (A.cn[P] != 0.0) v -= A.cn[P] * x[P + 1];
      y[P] = v;
    }
  }
}

// Jacobi-preconditioned CG on the unknown nodes of x (known entries untouched).
std::size_t pcg(const Assembly& A, const std::vector<double>& b, std::vector<double>& x, double tol,
                std::size_t max_iter, double& rel_res) {
  const std::size_t N = b.size();
  std::vector<double> xs(N, 0.0), r(N), z(N), p(N), q(N);
  for (std::size_t n = 0; n < N; ++n) xs[n] = A.known[n] ? 0.0 : x[n];
  apply(A, xs, q);
  double bnorm = 0.0, rz = 0.0, rnorm = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    if (A.known[n]) {
      r[n] = z[n] = p[n] = 0.0;
      continue;
    }
    r[n] = b[n] - q[n];
    z[n] = r[n] / A.diag[n];
    p[n] = z[n];
    bnorm += b[n] * b[n];
    rz += r[n] * z[n];
    rnorm += r[n] * r[n];
  }
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) bnorm = 1.0;
  rel_res = std::sqrt(rnorm) / bnorm;
  std::size_t it = 0;
  while (rel_res > tol) {
    if (it >= max_iter) {
      std::ostringstream os;
      os << "conjugate gradient stagnated after " << it << " iterations, relative residual " << rel_res;
      throw LinearSolverError(os.str(), rel_res);
    }
    apply(A, p, q);
    double pq = 0.0;
    for (std::size_t n = 0; n < N; ++n) pq += p[n] * q[n];
    if (!(pq > 0.0)) throw LinearSolverError("conjugate gradient breakdown (operator not SPD)", rel_res);
    const double alpha = rz / pq;
    double rz_new = 0.0;
    rnorm = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      if (A.known[n]) continue;
      xs[n] += alpha * p[n];
      r[n] -= alpha * q[n];
      z[n] = r[n] / A.diag[n];
      rz_new += r[n] * z[n];
      rnorm += r[n] * r[n];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t n = 0; n < N; ++n) {
      if (!A.known[n]) p[n] = z[n] + beta * p[n];
    }
    rel_res = std::sqrt(rnorm) / bnorm;
    ++it;
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (!A.known[n]) x[n] = xs[n];
  }
  return it;
}

}  // namespace

std::vector<double> elliptic_solve(const Grid& grid, std::span<const double> rho,
                                   std::span<const double> omega, double m,
                                   std::span<const double> inlet, const EllipticOptions& opt,
                                   std::span<const double> guess, EllipticStats* stats) {
  const std::size_t N = grid.size(), nI = grid.nxi(), nJ = grid.nsig();
  if (rho.size() != N || omega.size() != N) throw InputError("field sizes do not match the grid");
  if (inlet.size() != nJ) throw InputError("inlet profile size does not match the grid");
  const bool axi = grid.kind() == GeometryKind::Axisymmetric;
  DiscreteOps ops(grid.layout());

  std::vector<double> psi(N);
  if (guess.size() == N) {
    std::copy(guess.begin(), guess.end(), psi.begin());
  } else {
    for (std::size_t i = 0; i < nI; ++i) {
      for (std::size_t j = 0; j < nJ; ++j) psi[grid.idx(i, j)] = inlet[j];
    }
  }
  for (std::size_t j = 0; j < nJ; ++j) psi[grid.idx(0, j)] = inlet[j];
  for (std::size_t i = 0; i < nI; ++i) {
    psi[grid.idx(i, nJ - 1)] = m;
    if (!axi) psi[grid.idx(i, 0)] = 0.0;
  }

  const Assembly A = assemble(grid, ops, rho, omega, psi);
  const std::size_t max_cg = opt.max_cg_iter ? opt.max_cg_iter : 20 * N;
  const auto& S = grid.layout().sigma;
  EllipticStats st;
  std::vector<double> b(N);
  for (std::size_t outer = 0; outer < std::max<std::size_t>(opt.max_outer, 1); ++outer) {
    b = A.rhs0;
    if (A.has_cross) {
      const auto dpsi_s = ops.d_sigma(psi, Parity::EvenZero);
      const auto dpsi_x = ops.d_xi(psi);
      // Cross fluxes: F_xi = -kx * psi_sigma, F_sigma = -ks * psi_xi at the faces.
      for (std::size_t i = 0; i + 1 < nI; ++i) {
        for (std::size_t j = 0; j < nJ; ++j) {
          const double F = -A.xcross[i * nJ + j] * 0.5 *
                           (dpsi_s[grid.idx(i, j)] + dpsi_s[grid.idx(i + 1, j)]);
          b[grid.idx(i, j)] += F;
          b[grid.idx(i + 1, j)] -= F;
        }
      }
      for (std::size_t i = 0; i < nI; ++i) {
        for (std::size_t j = 0; j + 1 < nJ; ++j) {
          const double F = -A.scross[i * (nJ - 1) + j] * 0.5 *
                           (dpsi_x[grid.idx(i, j)] + dpsi_x[grid.idx(i, j + 1)]);
          b[grid.idx(i, j)] += F;
          b[grid.idx(i, j + 1)] -= F;
        }
      }
      (void)S;
    }
    std::vector<double> prev = psi;
    double rr = 0.0;
    st.cg_iterations += pcg(A, b, psi, opt.cg_tol, max_cg, rr);
    st.residual = rr;
    st.outer_iterations = outer + 1;
    if (!A.has_cross) break;
    double change = 0.0;
    for (std::size_t n = 0; n < N; ++n) change = std::max(change, std::fabs(psi[n] - prev[n]));
    if (change <= opt.outer_tol * std::fabs(m)) break;
  }
  if (stats) *stats = st;
  return psi;
}

}  // namespace sll
