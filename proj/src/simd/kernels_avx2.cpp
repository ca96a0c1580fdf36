// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only called after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "uavmm/simd/kernels.hpp"

namespace uavmm::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes hold (ar*bi, ai*br) pairs; the imaginary part is even minus odd.
inline double hsum_alternating(__m256d v) {
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  return hsum(_mm256_mul_pd(v, sign));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

cd dot_conj_avx2(const cd* a, const cd* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, swap_pairs(b0), im0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im1 = _mm256_fmadd_pd(a1, swap_pairs(b1), im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, swap_pairs(b0), im0);
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum_alternating(_mm256_add_pd(im0, im1));
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void dot_conj3_avx2(const cd* a, const cd* b1, const cd* b2, const cd* b3,
                    std::size_t n, cd* r1, cd* r2, cd* r3) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* p1 = reinterpret_cast<const double*>(b1);
  const double* p2 = reinterpret_cast<const double*>(b2);
  const double* p3 = reinterpret_cast<const double*>(b3);
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  __m256d re2 = _mm256_setzero_pd(), im2 = _mm256_setzero_pd();
  __m256d re3 = _mm256_setzero_pd(), im3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(pa + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p1 + 2 * i);
    const __m256d v2 = _mm256_loadu_pd(p2 + 2 * i);
    const __m256d v3 = _mm256_loadu_pd(p3 + 2 * i);
    re1 = _mm256_fmadd_pd(av, v1, re1);
    im1 = _mm256_fmadd_pd(av, swap_pairs(v1), im1);
    re2 = _mm256_fmadd_pd(av, v2, re2);
    im2 = _mm256_fmadd_pd(av, swap_pairs(v2), im2);
    re3 = _mm256_fmadd_pd(av, v3, re3);
    im3 = _mm256_fmadd_pd(av, swap_pairs(v3), im3);
  }
  cd s1(hsum(re1), hsum_alternating(im1));
  cd s2(hsum(re2), hsum_alternating(im2));
  cd s3(hsum(re3), hsum_alternating(im3));
  for (; i < n; ++i) {
    const cd ca = std::conj(a[i]);
    s1 += ca * b1[i];
    s2 += ca * b2[i];
    s3 += ca * b3[i];
  }
  *r1 = s1;
  *r2 = s2;
  *r3 = s3;
}

double norm_sq_avx2(const cd* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(pa + i);
    const __m256d v1 = _mm256_loadu_pd(pa + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) s += pa[i] * pa[i];
  return s;
}

void kron_avx2(const cd* x, std::size_t nx, const cd* y, std::size_t ny, cd* out) {
  const double* py = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < nx; ++i) {
    const __m256d xr = _mm256_set1_pd(x[i].real());
    const __m256d xi = _mm256_set1_pd(x[i].imag());
    double* po = reinterpret_cast<double*>(out + i * ny);
    std::size_t j = 0;
    for (; j + 2 <= ny; j += 2) {
      const __m256d yv = _mm256_loadu_pd(py + 2 * j);
      const __m256d r = _mm256_fmaddsub_pd(xr, yv, _mm256_mul_pd(xi, swap_pairs(yv)));
      _mm256_storeu_pd(po + 2 * j, r);
    }
    for (; j < ny; ++j) out[i * ny + j] = x[i] * y[j];
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", dot_conj_avx2, dot_conj3_avx2, norm_sq_avx2,
                                 kron_avx2};
  return table;
}

}  // namespace uavmm::simd
