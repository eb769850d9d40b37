#include "nls/linearized.hpp"

#include <cmath>

namespace nls {

RestLinearization make_rest_linearization(const Grid& g, const RadialProfile& prof,
                                          const Nonlinearity& nl, const vec3& c) {
  RestLinearization lin;
  lin.g = &g;
  lin.E = prof.E;
  Field b = synthesize_radial(g, [&](double r) { return prof.value(r); }, c);
  const std::size_t n = g.size();
  lin.c1.resize(n);
  lin.c2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b.a[i].real() * b.a[i].real();
    lin.c1[i] = prof.E - nl.beta1(s);
    lin.c2[i] = -2.0 * nl.beta2(s) * s;
  }
  return lin;
}

Field apply_hessian(const RestLinearization& lin, const Field& u) {
  const Grid& g = *lin.g;
  const Fft& fft = fft_for(g);
  Field out(g);
  fft.forward(u.a.data(), out.a.data());
  std::size_t idx = 0;
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j) {
      double kij = g.wavenumber(0, i) * g.wavenumber(0, i) +
                   g.wavenumber(1, j) * g.wavenumber(1, j);
      for (int k = 0; k < g.n[2]; ++k, ++idx) {
        double k2 = kij + g.wavenumber(2, k) * g.wavenumber(2, k);
        out.a[idx] *= k2;
      }
    }
  fft.backward_ip(out.a.data());
  for (std::size_t i = 0; i < g.size(); ++i)
    out.a[i] += lin.c1[i] * u.a[i] + lin.c2[i] * u.a[i].real();
  return out;
}

Field apply_generator(const RestLinearization& lin, const Field& u) {
  Field out = apply_hessian(lin, u);
  for (auto& z : out.a) z = cplx(z.imag(), -z.real());  // multiply by -i
  return out;
}

}  // namespace nls
