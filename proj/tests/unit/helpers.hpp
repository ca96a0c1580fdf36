#pragma once

#include <complex>
#include <vector>

#include "uavmm/random.hpp"

namespace uavmm::test {

inline std::vector<std::complex<double>> random_cvector(Rng& rng, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  for (auto& z : v) z = complex_gaussian(rng, 1.0);
  return v;
}

inline double wavelength_28ghz() { return 3.0e8 / 28e9; }

}  // namespace uavmm::test
