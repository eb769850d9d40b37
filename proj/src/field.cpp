#include "nls/field.hpp"

#include <cmath>

namespace nls {

void fill(Field& f, const std::function<cplx(const std::array<double, 3>&)>& fn) {
  const Grid& g = *f.g;
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++idx) {
        std::array<double, 3> x{g.coord(0, i0), g.dim > 1 ? g.coord(1, i1) : 0.0,
                                g.dim > 2 ? g.coord(2, i2) : 0.0};
        f.a[idx] = fn(x);
      }
}

void pair_parts(const Field& u, rvec& plus, rvec& minus) {
  const double s = std::sqrt(2.0);
  plus.resize(u.size());
  minus.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    plus[i] = s * u.a[i].imag();
    minus[i] = s * u.a[i].real();
  }
}

void from_pair(Field& u, const rvec& plus, const rvec& minus) {
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < u.size(); ++i) u.a[i] = cplx(s * minus[i], s * plus[i]);
}

double linf(const Field& u) {
  double m = 0;
  for (const auto& z : u.a) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace nls
