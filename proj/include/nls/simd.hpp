#pragma once
#include <complex>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

// runtime-dispatched inner-loop kernels: one scalar reference implementation,
// plus AVX2 (x86) and NEON (aarch64) variants that must agree with it to
// rounding-level tolerance (see test_simd).
namespace nls::simd {

using cplx = std::complex<double>;

struct Kernels {
  void (*cmul)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
  void (*cmul_inplace)(cplx* a, const cplx* b, std::size_t n);
  void (*rmul_inplace)(cplx* a, const double* m, std::size_t n);
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);   // sum a[i]*conj(b[i])
  double (*norm2)(const cplx* a, std::size_t n);               // sum |a[i]|^2
  void (*abs2)(double* dst, const cplx* a, std::size_t n);
  void (*phase_rotate_cubic)(cplx* psi, double c, std::size_t n);
  void (*phase_rotate_saturated)(cplx* psi, double c, double a, std::size_t n);
};

const Kernels& kernels();
const Kernels* backend(const std::string& name);   // nullptr if not built in / unsupported
bool force_backend(const std::string& name);
std::string active_backend();
std::vector<std::string> available_backends();

namespace detail {
// sin/cos for |t| <= 0.25 by degree-12 Taylor in t^2; max error ~1e-16.
// shared between scalar and vector paths so backends agree bit-for-bit on
// the polynomial branch. larger angles take the libm fallback.
inline void sincos_small(double t, double& c, double& s) {
  const double t2 = t * t;
  c = 1.0 + t2 * (-1.0 / 2 + t2 * (1.0 / 24 + t2 * (-1.0 / 720 + t2 * (1.0 / 40320 + t2 * (-1.0 / 3628800)))));
  s = t * (1.0 + t2 * (-1.0 / 6 + t2 * (1.0 / 120 + t2 * (-1.0 / 5040 + t2 * (1.0 / 362880 + t2 * (-1.0 / 39916800))))));
}
constexpr double phase_poly_cutoff = 0.25;

inline void phase_apply(cplx& z, double theta) {
  double c, s;
  if (std::abs(theta) <= phase_poly_cutoff)
    sincos_small(theta, c, s);
  else {
    c = std::cos(theta);
    s = std::sin(theta);
  }
  z *= cplx(c, s);
}
}  // namespace detail

}  // namespace nls::simd
