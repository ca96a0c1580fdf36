#pragma once
// Complex-vector inner loops used by the channel, sensing and estimator code.
//
// Every kernel has a scalar reference implementation; wider variants are
// compiled in separate translation units and selected once at runtime.
// The UAVMM_SIMD environment variable ("scalar", "avx2", "auto") overrides
// the selection.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace uavmm::simd {

using cd = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // sum_i conj(a[i]) * b[i]
  cd (*dot_conj)(const cd* a, const cd* b, std::size_t n);

  // r1 = sum conj(a) b1, r2 = sum conj(a) b2, r3 = sum conj(a) b3 in one pass
  void (*dot_conj3)(const cd* a, const cd* b1, const cd* b2, const cd* b3,
                    std::size_t n, cd* r1, cd* r2, cd* r3);

  // sum_i |a[i]|^2
  double (*norm_sq)(const cd* a, std::size_t n);

  // out[i * ny + j] = x[i] * y[j]
  void (*kron)(const cd* x, std::size_t nx, const cd* y, std::size_t ny, cd* out);
};

const KernelTable& scalar_kernels();

// Kernel tables usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

// Active table: best available unless overridden by UAVMM_SIMD.
const KernelTable& kernels();

// Forces a table by name for the remainder of the process; returns false
// if the name is unknown or not supported by the CPU.
bool select_kernels(std::string_view name);

inline cd dot_conj(std::span<const cd> a, std::span<const cd> b) {
  return kernels().dot_conj(a.data(), b.data(), a.size());
}

inline double norm_sq(std::span<const cd> a) {
  return kernels().norm_sq(a.data(), a.size());
}

inline void kron(std::span<const cd> x, std::span<const cd> y, std::span<cd> out) {
  kernels().kron(x.data(), x.size(), y.data(), y.size(), out.data());
}

}  // namespace uavmm::simd
