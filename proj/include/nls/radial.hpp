#pragma once
#include <vector>

#include "nls/grid.hpp"

namespace nls {

// uniform radial mesh: nodes r_i = i*h for i = 0..m-1, h = r_max/m.
// the wall at r = r_max acts as a Dirichlet boundary (values beyond ~0).
struct RadialGrid {
  int m = 0;
  double r_max = 0;
  double h() const { return r_max / m; }
  double r(int i) const { return i * h(); }
  bool operator==(const RadialGrid& o) const { return m == o.m && r_max == o.r_max; }
};

// surface measure of the unit sphere in R^dim (dim = 1 counts both half-lines)
double sphere_area(int dim);

// trapezoid of f(r) r^(dim-1) dr over [0, r_max]; assumes f ~ 0 at the wall
double radial_integral(const RadialGrid& g, int dim, const rvec& f);
// weighted product: Int f g r^(dim-1) dr
double radial_dot(const RadialGrid& g, int dim, const rvec& f, const rvec& g2);

// tridiagonal solve (Thomas); rhs is overwritten with the solution.
// lo[0] and up[n-1] are unused padding.
void solve_tridiag(const rvec& lo, const rvec& di, const rvec& up, rvec& rhs);

// general banded matrix in LAPACK storage, solved by dgbsv
struct BandMatrix {
  int n = 0, kl = 0, ku = 0;
  rvec ab;  // col-major, ldab = 2*kl+ku+1
  BandMatrix(int n_, int kl_, int ku_);
  double& at(int i, int j);  // |i-j| <= band assumed
  void add(int i, int j, double v) { at(i, j) += v; }
  rvec solve(rvec rhs) const;  // one-shot factor+solve
};

// second-order rows of (-Laplacian_radial + E) on profile nodes (even
// symmetry at r=0, Dirichlet at the wall); used by the fixed-point stage
struct RadialOperator {
  RadialGrid g;
  int dim = 3;
  rvec lo, di, up;
  static RadialOperator shifted_laplacian(const RadialGrid& g, int dim, double E);
  void apply(const rvec& x, rvec& y) const;
  rvec solve(rvec rhs) const;
};

// fourth-order action of -Laplacian_radial on profile-type (even) functions
void apply_radial_laplacian4(const RadialGrid& g, int dim, const rvec& b, rvec& out);
// assemble the same operator plus a diagonal into a band matrix (kl = ku = 2)
BandMatrix radial_laplacian4_band(const RadialGrid& g, int dim, const rvec& diag_shift);

// cubic Lagrange interpolation of uniform samples f_i = f(i*h); clamps the
// stencil at the ends; returns 0 beyond the last sample
double interp_radial(const rvec& f, double h, double r);

}  // namespace nls
