#pragma once
#include "nls/profile.hpp"

namespace nls {

// interior mesh for the half-line reduction u(r) = r * (radial part):
// nodes r_k = (k+1) h, k = 0..m-1, with Dirichlet walls at r = 0 and
// r = r_max = (m+1) h. the flat measure dr makes the operators symmetric.
struct SectorGrid {
  int m = 0;
  double r_max = 0;
  double h() const { return r_max / (m + 1); }
  double r(int k) const { return (k + 1) * h(); }
  bool operator==(const SectorGrid& o) const { return m == o.m && r_max == o.r_max; }
};

double sector_dot(const SectorGrid& g, const rvec& a, const rvec& b);  // Int a b dr

// one angular-momentum block of the linearization about the profile:
// plus  = -d^2/dr^2 + l(l+1)/r^2 + E - beta'(b^2)
// minus = plus - 2 beta''(b^2) b^2
// both stored as a shared fourth-order kinetic stencil plus diagonal potentials
struct SectorOperator {
  int ell = 0;
  double E = 0;
  SectorGrid grid;
  rvec vplus, vminus;  // diagonal potential parts including the centrifugal term

  void apply_plus(const rvec& u, rvec& out) const;
  void apply_minus(const rvec& u, rvec& out) const;
  rvec dense_plus() const;   // m x m, row-major, symmetric
  rvec dense_minus() const;
};

SectorOperator build_sector(int ell, const RadialProfile& profile, const Nonlinearity& nl,
                            int m_nodes, double r_max);

}  // namespace nls
