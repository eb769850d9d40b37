#pragma once
#include <functional>

#include "nls/grid.hpp"
#include "nls/simd.hpp"

namespace nls {

// a state of the flow: complex-valued function on the grid. the phase space
// is this set viewed as a real vector space; multiplication by i is the
// operator E, its inverse J = -i.
struct Field {
  const Grid* g = nullptr;
  cvec a;

  Field() = default;
  explicit Field(const Grid& grid) : g(&grid), a(grid.size(), cplx(0, 0)) {}
  std::size_t size() const { return a.size(); }
  cplx& operator[](std::size_t i) { return a[i]; }
  const cplx& operator[](std::size_t i) const { return a[i]; }
};

inline void zero(Field& f) { std::fill(f.a.begin(), f.a.end(), cplx(0, 0)); }

inline void axpy(Field& y, cplx alpha, const Field& x) {
  simd::kernels().axpy(y.a.data(), alpha, x.a.data(), y.size());
}

inline void scale(Field& f, cplx alpha) {
  for (auto& z : f.a) z *= alpha;
}

// fills f(x) = fn(x) with x the minimal-image coordinates
void fill(Field& f, const std::function<cplx(const std::array<double, 3>&)>& fn);

// real/imaginary split u = (u_minus + i u_plus)/sqrt(2); the pair picture
// diagonalizes the linearization about a real profile
void pair_parts(const Field& u, rvec& plus, rvec& minus);
void from_pair(Field& u, const rvec& plus, const rvec& minus);

double linf(const Field& u);

}  // namespace nls
