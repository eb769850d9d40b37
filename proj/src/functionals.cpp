#include "nls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "nls/simd.hpp"

namespace nls {

double inner(const Field& u, const Field& v) {
  if (!(*u.g == *v.g)) throw std::invalid_argument("inner: grid mismatch");
  cplx s = simd::kernels().cdot(u.a.data(), v.a.data(), u.a.size());
  return 2.0 * u.g->cell_volume() * s.real();
}

double symplectic(const Field& u, const Field& v) {
  if (!(*u.g == *v.g)) throw std::invalid_argument("symplectic: grid mismatch");
  cplx s = simd::kernels().cdot(u.a.data(), v.a.data(), u.a.size());
  return -2.0 * u.g->cell_volume() * s.imag();
}

double mass(const Field& u) {
  return u.g->cell_volume() * simd::kernels().norm2(u.a.data(), u.a.size());
}

double norm_l2(const Field& u) { return std::sqrt(mass(u)); }

double norm_l6(const Field& u) {
  double s = 0.0;
  for (const cplx& z : u.a) {
    double a2 = std::norm(z);
    s += a2 * a2 * a2;
  }
  return std::pow(s * u.g->cell_volume(), 1.0 / 6.0);
}

Field apply_E(const Field& u) {
  Field r(*u.g);
  const cplx i1(0.0, 1.0);
  for (std::size_t m = 0; m < u.a.size(); ++m) r.a[m] = i1 * u.a[m];
  return r;
}

Field apply_J(const Field& u) {
  Field r(*u.g);
  const cplx mi(0.0, -1.0);
  for (std::size_t m = 0; m < u.a.size(); ++m) r.a[m] = mi * u.a[m];
  return r;
}

Field apply_A(int j, const Field& u) {
  if (j == 4) return u;
  if (j < 1 || j > 3) throw std::invalid_argument("apply_A: j must be 1..4");
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  Field r(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  int ax = j - 1;
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        int idx[3] = {i0, i1, i2};
        hat[m] *= g.wavenumber(ax, idx[ax]);
      }
  F.backward(hat.data(), r.a.data());
  return r;
}

double momentum(int j, const Field& u) {
  if (j == 4) return mass(u);
  if (j < 1 || j > 3) throw std::invalid_argument("momentum: j must be 1..4");
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  int ax = j - 1;
  double s = 0.0;
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        int idx[3] = {i0, i1, i2};
        s += g.wavenumber(ax, idx[ax]) * std::norm(hat[m]);
      }
  return s * g.cell_volume() / double(u.a.size());
}

std::array<double, 4> momentum_all(const Field& u) {
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  std::array<double, 4> P{0, 0, 0, 0};
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double a2 = std::norm(hat[m]);
        P[0] += g.wavenumber(0, i0) * a2;
        P[1] += g.wavenumber(1, i1) * a2;
        P[2] += g.wavenumber(2, i2) * a2;
      }
  double scale = g.cell_volume() / double(u.a.size());
  for (int j = 0; j < 3; ++j) P[j] *= scale;
  P[3] = mass(u);
  return P;
}

double kinetic_energy(const Field& u) {
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  double s = 0.0;
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0)
    for (int i1 = 0; i1 < g.n[1]; ++i1)
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double k0 = g.wavenumber(0, i0);
        double k1 = g.wavenumber(1, i1);
        double k2 = g.wavenumber(2, i2);
        s += (k0 * k0 + k1 * k1 + k2 * k2) * std::norm(hat[m]);
      }
  return s * g.cell_volume() / double(u.a.size());
}

double norm_h1(const Field& u) { return std::sqrt(mass(u) + kinetic_energy(u)); }

double hamiltonian(const Field& u, const Nonlinearity& nl) {
  double pot = 0.0;
  for (const cplx& z : u.a) pot += nl.beta(std::norm(z));
  return kinetic_energy(u) - pot * u.g->cell_volume();
}

Field group_action(double q4, const std::array<double, 3>& q, const Field& u) {
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  Field r(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  // translation by q: phase e^{-i k.q} per mode
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    double p0 = g.wavenumber(0, i0) * q[0];
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      double p01 = p0 + g.wavenumber(1, i1) * q[1];
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double ph = p01 + g.wavenumber(2, i2) * q[2];
        hat[m] *= cplx(std::cos(ph), -std::sin(ph));
      }
    }
  }
  F.backward(hat.data(), r.a.data());
  cplx gauge(std::cos(q4), -std::sin(q4));
  for (cplx& z : r.a) z *= gauge;
  return r;
}

Field boost(const std::array<double, 3>& v, const Field& u) {
  const Grid& g = *u.g;
  Field r(g);
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    double p0 = 0.5 * v[0] * g.coord(0, i0);
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      double p01 = p0 + 0.5 * v[1] * g.coord(1, i1);
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double ph = p01 + 0.5 * v[2] * g.coord(2, i2);
        r.a[m] = u.a[m] * cplx(std::cos(ph), std::sin(ph));
      }
    }
  }
  return r;
}

double weighted_norm(const Field& u, const std::array<double, 3>& a, double nu) {
  const Grid& g = *u.g;
  double s = 0.0;
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    double d0 = minimal_image(g.coord(0, i0) - a[0], g.box[0]);
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      double d1 = minimal_image(g.coord(1, i1) - a[1], g.box[1]);
      double d01 = d0 * d0 + d1 * d1;
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double d2 = minimal_image(g.coord(2, i2) - a[2], g.box[2]);
        double r2 = d01 + d2 * d2;
        s += std::norm(u.a[m]) * std::pow(1.0 + r2, -nu);
      }
    }
  }
  return std::sqrt(s * g.cell_volume());
}

Field free_flow(const Field& u, double t) {
  const Grid& g = *u.g;
  const Fft& F = fft_for(g);
  Field r(g);
  cvec hat(u.a.size());
  F.forward(u.a.data(), hat.data());
  std::size_t m = 0;
  for (int i0 = 0; i0 < g.n[0]; ++i0) {
    double k0 = g.wavenumber(0, i0);
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      double k1 = g.wavenumber(1, i1);
      double k01 = k0 * k0 + k1 * k1;
      for (int i2 = 0; i2 < g.n[2]; ++i2, ++m) {
        double k2 = g.wavenumber(2, i2);
        double ph = -t * (k01 + k2 * k2);
        hat[m] *= cplx(std::cos(ph), std::sin(ph));
      }
    }
  }
  F.backward(hat.data(), r.a.data());
  return r;
}

}  // namespace nls
