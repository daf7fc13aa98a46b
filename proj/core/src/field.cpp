#include "sll/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sll {

void FlowField::resize() {
  const std::size_t n = layout.size();
  for (auto* v : {&rho, &u1, &u2, &p, &q, &c, &mach, &B, &S, &psi, &label, &omega}) v->assign(n, 0.0);
}

void FlowField::fill_kinematics(const thermo::GasModel& gas) {
  const std::size_t n = size();
  q.resize(n);
  c.resize(n);
  mach.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    q[k] = std::hypot(u1[k], u2[k]);
    c[k] = thermo::sound_speed(gas, rho[k], p[k]);
    mach[k] = thermo::mach(q[k], c[k]);
  }
}

void FlowField::fill_invariants(const thermo::GasModel& gas) {
  const std::size_t n = size();
  B.resize(n);
  S.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (gas.homentropic()) {
      B[k] = thermo::bernoulli_hom(gas.law(), rho[k], q[k]);
      S[k] = std::numeric_limits<double>::quiet_NaN();
    } else {
      B[k] = thermo::bernoulli(rho[k], p[k], q[k], gas.gamma());
      S[k] = thermo::entropy(rho[k], p[k], gas.gamma());
    }
  }
}

double FlowField::max_mach() const {
  double m = 0.0;
  for (double v : mach) m = std::max(m, v);
  return m;
}

}  // namespace sll
