#include "uavmm/random.hpp"

#include <cmath>

namespace uavmm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, StreamId stream,
                          std::uint64_t sub) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ sub);
}

Rng make_stream(std::uint64_t seed, std::uint64_t trial, StreamId stream, std::uint64_t sub) {
  return Rng(derive_seed(seed, trial, stream, sub));
}

// The distributions below are written out instead of using <random>'s
// distribution objects, whose algorithms are implementation-defined; this
// keeps CSV outputs identical across standard libraries.

double uniform(Rng& rng, double lo, double hi) {
  // 53 random mantissa bits -> [0, 1)
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double gaussian(Rng& rng, double mean, double stddev) {
  // Box-Muller; the second variate is discarded so each call consumes
  // exactly two engine outputs.
  const double u1 = 1.0 - uniform(rng, 0.0, 1.0);  // (0, 1]
  const double u2 = uniform(rng, 0.0, 1.0);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

std::complex<double> complex_gaussian(Rng& rng, double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = gaussian(rng, 0.0, s);
  const double im = gaussian(rng, 0.0, s);
  return {re, im};
}

}  // namespace uavmm
