#include "uavmm/simd/kernels.hpp"

namespace uavmm::simd {
namespace {

cd dot_conj_scalar(const cd* a, const cd* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void dot_conj3_scalar(const cd* a, const cd* b1, const cd* b2, const cd* b3,
                      std::size_t n, cd* r1, cd* r2, cd* r3) {
  *r1 = dot_conj_scalar(a, b1, n);
  *r2 = dot_conj_scalar(a, b2, n);
  *r3 = dot_conj_scalar(a, b3, n);
}

double norm_sq_scalar(const cd* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

void kron_scalar(const cd* x, std::size_t nx, const cd* y, std::size_t ny, cd* out) {
  for (std::size_t i = 0; i < nx; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    cd* row = out + i * ny;
    for (std::size_t j = 0; j < ny; ++j) {
      const double yr = y[j].real(), yi = y[j].imag();
      row[j] = cd(xr * yr - xi * yi, xr * yi + xi * yr);
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", dot_conj_scalar, dot_conj3_scalar,
                                 norm_sq_scalar, kron_scalar};
  return table;
}

}  // namespace uavmm::simd
