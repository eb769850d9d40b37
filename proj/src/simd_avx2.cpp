#include "nls/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace nls::simd {

namespace {

// complex multiply on [r0 i0 r1 i1] packed registers
inline __m256d cmul_pd(__m256d a, __m256d b) {
  __m256d br = _mm256_movedup_pd(b);         // [br0 br0 br1 br1]
  __m256d bi = _mm256_permute_pd(b, 0xF);    // [bi0 bi0 bi1 bi1]
  __m256d as = _mm256_permute_pd(a, 0x5);    // [ai0 ar0 ai1 ar1]
  return _mm256_addsub_pd(_mm256_mul_pd(a, br), _mm256_mul_pd(as, bi));
}

void cmul_v(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  double* d = reinterpret_cast<double*>(dst);
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(d + 2 * i, cmul_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_inplace_v(cplx* a, const cplx* b, std::size_t n) { cmul_v(a, a, b, n); }

void rmul_inplace_v(cplx* a, const double* m, std::size_t n) {
  std::size_t i = 0;
  double* pa = reinterpret_cast<double*>(a);
  for (; i + 2 <= n; i += 2) {
    __m128d mm = _mm_loadu_pd(m + i);
    __m256d mv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);  // [m0 m0 m1 m1]
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), mv));
  }
  for (; i < n; ++i) a[i] *= m[i];
}

void axpy_v(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d r = _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), cmul_pd(av, _mm256_loadu_pd(px + 2 * i)));
    _mm256_storeu_pd(py + 2 * i, r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cplx cdot_v(const cplx* a, const cplx* b, std::size_t n) {
  // sum a*conj(b): re = ar*br + ai*bi, im = ai*br - ar*bi
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(pa + 2 * i), b0 = _mm256_loadu_pd(pb + 2 * i);
    __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4), b1 = _mm256_loadu_pd(pb + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    __m256d as0 = _mm256_permute_pd(a0, 0x5);  // [ai ar ...]
    __m256d as1 = _mm256_permute_pd(a1, 0x5);
    im0 = _mm256_fmadd_pd(as0, b0, im0);       // [ai*br, ar*bi, ...]
    im1 = _mm256_fmadd_pd(as1, b1, im1);
  }
  __m256d re = _mm256_add_pd(re0, re1);
  __m256d im = _mm256_add_pd(im0, im1);
  alignas(32) double r[4], s[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(s, im);
  double sre = (r[0] + r[2]) + (r[1] + r[3]);
  double sim = (s[0] + s[2]) - (s[1] + s[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    sre += ar * br + ai * bi;
    sim += ai * br - ar * bi;
  }
  return {sre, sim};
}

double norm2_v(const cplx* a, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  const double* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
    s0 = _mm256_fmadd_pd(a0, a0, s0);
    s1 = _mm256_fmadd_pd(a1, a1, s1);
  }
  __m256d s = _mm256_add_pd(s0, s1);
  alignas(32) double r[4];
  _mm256_store_pd(r, s);
  double sum = (r[0] + r[2]) + (r[1] + r[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    sum += ar * ar + ai * ai;
  }
  return sum;
}

void abs2_v(double* dst, const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    __m256d sq = _mm256_mul_pd(v, v);
    __m256d sw = _mm256_permute_pd(sq, 0x5);
    __m256d s = _mm256_add_pd(sq, sw);  // [|a0|^2 |a0|^2 |a1|^2 |a1|^2]
    __m128d lo = _mm256_castpd256_pd128(s);
    __m128d hi = _mm256_extractf128_pd(s, 1);
    _mm_storeu_pd(dst + i, _mm_unpacklo_pd(lo, hi));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    dst[i] = ar * ar + ai * ai;
  }
}

// vectorized small-angle sin/cos (same Taylor coefficients as detail::sincos_small)
inline void sincos_small_pd(__m256d t, __m256d& c, __m256d& s) {
  const __m256d t2 = _mm256_mul_pd(t, t);
  __m256d p = _mm256_set1_pd(-1.0 / 3628800);
  p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(1.0 / 40320));
  p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(-1.0 / 720));
  p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(1.0 / 24));
  p = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(-1.0 / 2));
  c = _mm256_fmadd_pd(p, t2, _mm256_set1_pd(1.0));
  __m256d q = _mm256_set1_pd(-1.0 / 39916800);
  q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(1.0 / 362880));
  q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(-1.0 / 5040));
  q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(1.0 / 120));
  q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(-1.0 / 6));
  q = _mm256_fmadd_pd(q, t2, _mm256_set1_pd(1.0));
  s = _mm256_mul_pd(q, t);
}

// applies psi *= exp(i*theta) for a register holding 2 complex values given
// theta in the low 2 lanes of a 128-bit register
inline __m256d rotate2(__m256d psi, __m128d theta2) {
  __m256d th = _mm256_permute4x64_pd(_mm256_castpd128_pd256(theta2), 0x50);  // [t0 t0 t1 t1]
  __m256d c, s;
  sincos_small_pd(th, c, s);
  // build [c0 s0 c1 s1] as the complex rotation factors
  __m256d rot = _mm256_blend_pd(c, s, 0xA);
  return cmul_pd(psi, rot);
}

template <class ThetaFn, class ScalarFix>
inline void phase_rotate_loop(cplx* psi, std::size_t n, ThetaFn theta2_of, ScalarFix fix1) {
  double* p = reinterpret_cast<double*>(psi);
  const __m128d cutoff = _mm_set1_pd(detail::phase_poly_cutoff);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(p + 2 * i);
    __m256d sq = _mm256_mul_pd(v, v);
    __m256d sw = _mm256_permute_pd(sq, 0x5);
    __m256d ss = _mm256_add_pd(sq, sw);
    __m128d lo = _mm256_castpd256_pd128(ss);
    __m128d hi = _mm256_extractf128_pd(ss, 1);
    __m128d s2 = _mm_unpacklo_pd(lo, hi);  // [|psi0|^2 |psi1|^2]
    __m128d th = theta2_of(s2);
    // libm fallback for rare large angles keeps the kernel exact everywhere
    __m128d big = _mm_cmpgt_pd(_mm_andnot_pd(_mm_set1_pd(-0.0), th), cutoff);
    if (_mm_movemask_pd(big)) {
      fix1(psi + i);
      fix1(psi + i + 1);
      continue;
    }
    _mm256_storeu_pd(p + 2 * i, rotate2(v, th));
  }
  for (; i < n; ++i) fix1(psi + i);
}

void phase_rotate_cubic_v(cplx* psi, double c, std::size_t n) {
  const __m128d cv = _mm_set1_pd(c);
  phase_rotate_loop(
      psi, n, [&](__m128d s2) { return _mm_mul_pd(cv, s2); },
      [&](cplx* z) {
        const double ar = z->real(), ai = z->imag();
        detail::phase_apply(*z, c * (ar * ar + ai * ai));
      });
}

void phase_rotate_saturated_v(cplx* psi, double c, double a, std::size_t n) {
  const __m128d cv = _mm_set1_pd(c), inv_a = _mm_set1_pd(1.0 / a), one = _mm_set1_pd(1.0);
  phase_rotate_loop(
      psi, n,
      [&](__m128d s2) {
        __m128d den = _mm_add_pd(one, _mm_mul_pd(s2, inv_a));
        return _mm_div_pd(_mm_mul_pd(cv, s2), den);
      },
      [&](cplx* z) {
        const double ar = z->real(), ai = z->imag();
        const double s = ar * ar + ai * ai;
        detail::phase_apply(*z, c * s / (1.0 + s / a));
      });
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k = {cmul_v,  cmul_inplace_v, rmul_inplace_v,       axpy_v,
                            cdot_v,  norm2_v,        abs2_v,               phase_rotate_cubic_v,
                            phase_rotate_saturated_v};
  return &k;
}

}  // namespace nls::simd

#else
namespace nls::simd {
const Kernels* avx2_kernels() { return nullptr; }
}
#endif
