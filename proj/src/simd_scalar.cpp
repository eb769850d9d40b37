#include "nls/simd.hpp"

namespace nls::simd {

namespace {

void cmul_s(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_inplace_s(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void rmul_inplace_s(cplx* a, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= m[i];
}

void axpy_s(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx cdot_s(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

double norm2_s(const cplx* a, std::size_t n) {
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    sum += ar * ar + ai * ai;
  }
  return sum;
}

void abs2_s(double* dst, const cplx* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    dst[i] = ar * ar + ai * ai;
  }
}

void phase_rotate_cubic_s(cplx* psi, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = psi[i].real(), ai = psi[i].imag();
    detail::phase_apply(psi[i], c * (ar * ar + ai * ai));
  }
}

void phase_rotate_saturated_s(cplx* psi, double c, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = psi[i].real(), ai = psi[i].imag();
    const double s = ar * ar + ai * ai;
    detail::phase_apply(psi[i], c * s / (1.0 + s / a));
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {cmul_s,  cmul_inplace_s, rmul_inplace_s,       axpy_s,
                            cdot_s,  norm2_s,        abs2_s,               phase_rotate_cubic_s,
                            phase_rotate_saturated_s};
  return k;
}

}  // namespace nls::simd
