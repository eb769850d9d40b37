#include "nls/radial.hpp"

#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace nls {

double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
  }
  throw std::invalid_argument("sphere_area: dim must be 1..3");
}

double radial_integral(const RadialGrid& g, int dim, const rvec& f) {
  double s = 0.0;
  for (int i = 1; i < g.m; ++i) s += f[i] * std::pow(g.r(i), dim - 1);
  s += 0.5 * f[0] * ((dim == 1) ? 1.0 : 0.0);
  return s * g.h();
}

double radial_dot(const RadialGrid& g, int dim, const rvec& f, const rvec& g2) {
  double s = 0.0;
  for (int i = 1; i < g.m; ++i) s += f[i] * g2[i] * std::pow(g.r(i), dim - 1);
  s += 0.5 * f[0] * g2[0] * ((dim == 1) ? 1.0 : 0.0);
  return s * g.h();
}

void solve_tridiag(const rvec& lo, const rvec& di, const rvec& up, rvec& rhs) {
  const int n = int(di.size());
  rvec c(n);
  c[0] = up[0] / di[0];
  rhs[0] /= di[0];
  for (int i = 1; i < n; ++i) {
    double w = di[i] - lo[i] * c[i - 1];
    c[i] = up[i] / w;
    rhs[i] = (rhs[i] - lo[i] * rhs[i - 1]) / w;
  }
  for (int i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
}

BandMatrix::BandMatrix(int n_, int kl_, int ku_) : n(n_), kl(kl_), ku(ku_) {
  ab.assign(std::size_t(n) * (2 * kl + ku + 1), 0.0);
}

double& BandMatrix::at(int i, int j) {
  return ab[std::size_t(j) * (2 * kl + ku + 1) + kl + ku + i - j];
}

rvec BandMatrix::solve(rvec rhs) const {
  rvec work = ab;
  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, work.data(),
                                  2 * kl + ku + 1, ipiv.data(), rhs.data(), n);
  if (info != 0) throw std::runtime_error("dgbsv failed, info=" + std::to_string(info));
  return rhs;
}

RadialOperator RadialOperator::shifted_laplacian(const RadialGrid& g, int dim, double E) {
  RadialOperator op;
  op.g = g;
  op.dim = dim;
  const int m = g.m;
  const double h = g.h(), ih2 = 1.0 / (h * h);
  op.lo.assign(m, 0.0);
  op.di.assign(m, 0.0);
  op.up.assign(m, 0.0);
  // r = 0: radial laplacian limit is dim * b''(0), even closure b(-h) = b(h)
  op.di[0] = 2.0 * dim * ih2 + E;
  op.up[0] = -2.0 * dim * ih2;
  for (int i = 1; i < m; ++i) {
    double c = (dim - 1) / g.r(i);
    op.lo[i] = -ih2 + 0.5 * c / h;
    op.di[i] = 2.0 * ih2 + E;
    op.up[i] = -ih2 - 0.5 * c / h;
  }
  return op;
}

void RadialOperator::apply(const rvec& x, rvec& y) const {
  const int m = g.m;
  y.resize(m);
  y[0] = di[0] * x[0] + up[0] * x[1];
  for (int i = 1; i < m - 1; ++i) y[i] = lo[i] * x[i - 1] + di[i] * x[i] + up[i] * x[i + 1];
  y[m - 1] = lo[m - 1] * x[m - 2] + di[m - 1] * x[m - 1];
}

rvec RadialOperator::solve(rvec rhs) const {
  solve_tridiag(lo, di, up, rhs);
  return rhs;
}

namespace {
// fourth-order five-point weights for -f'' and f' (central), 1/(12 h^2), 1/(12 h)
constexpr double w2[5] = {1.0, -16.0, 30.0, -16.0, 1.0};
constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
}  // namespace

void apply_radial_laplacian4(const RadialGrid& g, int dim, const rvec& b, rvec& out) {
  const int m = g.m;
  const double h = g.h(), s2 = 1.0 / (12 * h * h), s1 = 1.0 / (12 * h);
  out.assign(m, 0.0);
  // r = 0: dim * (-b''(0)), even ghosts b(-h)=b(h), b(-2h)=b(2h)
  out[0] = dim * s2 * (30.0 * b[0] - 32.0 * b[1] + 2.0 * b[2]);
  {  // i = 1: ghost b(-h) = b(h)
    double c = (dim - 1) / g.r(1);
    out[1] = s2 * (-16.0 * b[0] + 31.0 * b[1] - 16.0 * b[2] + b[3]) -
             c * s1 * (-8.0 * b[0] + b[1] + 8.0 * b[2] - b[3]);
  }
  for (int i = 2; i < m - 2; ++i) {
    double c = (dim - 1) / g.r(i);
    double d2 = 0.0, d1 = 0.0;
    for (int k = 0; k < 5; ++k) {
      d2 += w2[k] * b[i - 2 + k];
      d1 += w1[k] * b[i - 2 + k];
    }
    out[i] = s2 * d2 - c * s1 * d1;
  }
  for (int i = m - 2; i < m; ++i) {  // wall: b(r >= r_max) = 0
    double c = (dim - 1) / g.r(i);
    double d2 = 0.0, d1 = 0.0;
    for (int k = 0; k < 5; ++k) {
      int j = i - 2 + k;
      if (j >= m) continue;
      d2 += w2[k] * b[j];
      d1 += w1[k] * b[j];
    }
    out[i] = s2 * d2 - c * s1 * d1;
  }
}

double interp_radial(const rvec& f, double h, double r) {
  const int n = int(f.size());
  if (r >= (n - 1) * h || n < 4) return 0.0;
  int i0 = int(std::floor(r / h)) - 1;
  if (i0 < 0) i0 = 0;
  if (i0 > n - 4) i0 = n - 4;
  double t = r / h - i0;
  double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  double l1 = t * (t - 2) * (t - 3) / 2.0;
  double l2 = -t * (t - 1) * (t - 3) / 2.0;
  double l3 = t * (t - 1) * (t - 2) / 6.0;
  return l0 * f[i0] + l1 * f[i0 + 1] + l2 * f[i0 + 2] + l3 * f[i0 + 3];
}

BandMatrix radial_laplacian4_band(const RadialGrid& g, int dim, const rvec& diag_shift) {
  const int m = g.m;
  const double h = g.h(), s2 = 1.0 / (12 * h * h), s1 = 1.0 / (12 * h);
  BandMatrix A(m, 2, 2);
  A.add(0, 0, dim * s2 * 30.0);
  A.add(0, 1, dim * s2 * -32.0);
  A.add(0, 2, dim * s2 * 2.0);
  {
    double c = (dim - 1) / g.r(1);
    const double c2[4] = {-16.0, 31.0, -16.0, 1.0};
    const double c1[4] = {-8.0, 1.0, 8.0, -1.0};
    for (int k = 0; k < 4; ++k) A.add(1, k, s2 * c2[k] - c * s1 * c1[k]);
  }
  for (int i = 2; i < m; ++i) {
    double c = (dim - 1) / g.r(i);
    for (int k = 0; k < 5; ++k) {
      int j = i - 2 + k;
      if (j >= m) continue;
      A.add(i, j, s2 * w2[k] - c * s1 * w1[k]);
    }
  }
  for (int i = 0; i < m; ++i) A.add(i, i, diag_shift[i]);
  return A;
}

}  // namespace nls
