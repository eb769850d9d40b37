#include "nls/simd.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace nls::simd {

namespace {

// one complex value per float64x2_t [re im]
inline float64x2_t cmul_n(float64x2_t a, float64x2_t b) {
  float64x2_t br = vdupq_laneq_f64(b, 0);
  float64x2_t bi = vdupq_laneq_f64(b, 1);
  float64x2_t as = vextq_f64(a, a, 1);                     // [ai ar]
  float64x2_t t = vmulq_f64(as, bi);                       // [ai*bi ar*bi]
  t = vsetq_lane_f64(-vgetq_lane_f64(t, 0), t, 0);         // [-ai*bi ar*bi]
  return vfmaq_f64(t, a, br);
}

void cmul_v(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  double* d = reinterpret_cast<double*>(dst);
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(d + 2 * i, cmul_n(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i)));
}

void cmul_inplace_v(cplx* a, const cplx* b, std::size_t n) { cmul_v(a, a, b, n); }

void rmul_inplace_v(cplx* a, const double* m, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(pa + 2 * i, vmulq_n_f64(vld1q_f64(pa + 2 * i), m[i]));
}

void axpy_v(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const float64x2_t av = {alpha.real(), alpha.imag()};
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t r = vaddq_f64(vld1q_f64(py + 2 * i), cmul_n(av, vld1q_f64(px + 2 * i)));
    vst1q_f64(py + 2 * i, r);
  }
}

cplx cdot_v(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t re = vdupq_n_f64(0), im = vdupq_n_f64(0);
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t av = vld1q_f64(pa + 2 * i), bv = vld1q_f64(pb + 2 * i);
    re = vfmaq_f64(re, av, bv);                            // [ar*br ai*bi]
    im = vfmaq_f64(im, vextq_f64(av, av, 1), bv);          // [ai*br ar*bi]
  }
  return {vgetq_lane_f64(re, 0) + vgetq_lane_f64(re, 1),
          vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1)};
}

double norm2_v(const cplx* a, std::size_t n) {
  float64x2_t s = vdupq_n_f64(0);
  const double* pa = reinterpret_cast<const double*>(a);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t av = vld1q_f64(pa + 2 * i);
    s = vfmaq_f64(s, av, av);
  }
  return vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
}

void abs2_v(double* dst, const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t av = vld1q_f64(pa + 2 * i);
    float64x2_t sq = vmulq_f64(av, av);
    dst[i] = vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1);
  }
}

void phase_rotate_cubic_v(cplx* psi, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = psi[i].real(), ai = psi[i].imag();
    detail::phase_apply(psi[i], c * (ar * ar + ai * ai));
  }
}

void phase_rotate_saturated_v(cplx* psi, double c, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = psi[i].real(), ai = psi[i].imag();
    const double s = ar * ar + ai * ai;
    detail::phase_apply(psi[i], c * s / (1.0 + s / a));
  }
}

}  // namespace

const Kernels* neon_kernels() {
  static const Kernels k = {cmul_v,  cmul_inplace_v, rmul_inplace_v,       axpy_v,
                            cdot_v,  norm2_v,        abs2_v,               phase_rotate_cubic_v,
                            phase_rotate_saturated_v};
  return &k;
}

}  // namespace nls::simd

#else
namespace nls::simd {
const Kernels* neon_kernels() { return nullptr; }
}
#endif
