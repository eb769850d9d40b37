#include "nls/sector.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

double sector_dot(const SectorGrid& g, const rvec& a, const rvec& b) {
  double s = 0;
  for (int k = 0; k < g.m; ++k) s += a[k] * b[k];
  return s * g.h();
}

namespace {

// kinetic stencil of -u'' at fourth order with Dirichlet walls. the ghost at
// r = -h is closed by reflection with the parity of u = r^(l+1) g(r^2): odd
// for even l, even for odd l, which keeps the full fourth-order accuracy in
// every sector. all closures land on the diagonal, keeping the matrix
// symmetric.
double ghost_sign(int ell) { return (ell % 2 == 1) ? +1.0 : -1.0; }

void apply_kinetic(const SectorGrid& g, int ell, const rvec& u, rvec& out) {
  const int m = g.m;
  const double s2 = 1.0 / (12.0 * g.h() * g.h());
  out.assign(m, 0.0);
  auto at = [&](int k) -> double { return (k >= 0 && k < m) ? u[k] : 0.0; };
  if (m > 2) out[0] = s2 * ((30.0 + ghost_sign(ell)) * u[0] - 16.0 * u[1] + u[2]);
  for (int k = 1; k < m; ++k)
    out[k] = s2 * (at(k - 2) - 16.0 * at(k - 1) + 30.0 * u[k] - 16.0 * at(k + 1) + at(k + 2));
}

}  // namespace

void SectorOperator::apply_plus(const rvec& u, rvec& out) const {
  apply_kinetic(grid, ell, u, out);
  for (int k = 0; k < grid.m; ++k) out[k] += vplus[k] * u[k];
}

void SectorOperator::apply_minus(const rvec& u, rvec& out) const {
  apply_kinetic(grid, ell, u, out);
  for (int k = 0; k < grid.m; ++k) out[k] += vminus[k] * u[k];
}

namespace {
rvec dense_with(const SectorGrid& g, int ell, const rvec& pot) {
  const int m = g.m;
  const double s2 = 1.0 / (12.0 * g.h() * g.h());
  rvec A(std::size_t(m) * m, 0.0);
  auto at = [&](int i, int j) -> double& { return A[std::size_t(i) * m + j]; };
  for (int k = 0; k < m; ++k) {
    at(k, k) = 30.0 * s2 + pot[k];
    if (k + 1 < m) at(k, k + 1) = at(k + 1, k) = -16.0 * s2;
    if (k + 2 < m) at(k, k + 2) = at(k + 2, k) = s2;
  }
  at(0, 0) += ghost_sign(ell) * s2;
  return A;
}
}  // namespace

rvec SectorOperator::dense_plus() const { return dense_with(grid, ell, vplus); }
rvec SectorOperator::dense_minus() const { return dense_with(grid, ell, vminus); }

SectorOperator build_sector(int ell, const RadialProfile& profile, const Nonlinearity& nl,
                            int m_nodes, double r_max) {
  if (ell < 0) throw std::invalid_argument("build_sector: ell must be >= 0");
  SectorOperator op;
  op.ell = ell;
  op.E = profile.E;
  op.grid.m = m_nodes;
  op.grid.r_max = r_max;
  op.vplus.resize(m_nodes);
  op.vminus.resize(m_nodes);
  for (int k = 0; k < m_nodes; ++k) {
    double r = op.grid.r(k);
    double b = profile.value(r);
    double s2 = b * b;
    double cent = double(ell) * (ell + 1) / (r * r);
    op.vplus[k] = cent + profile.E - nl.beta1(s2);
    op.vminus[k] = op.vplus[k] - 2.0 * nl.beta2(s2) * s2;
  }
  return op;
}

}  // namespace nls
