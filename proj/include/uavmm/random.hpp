#pragma once
// Seeded random streams. Every stream is a pure function of
// (seed, trial, stream id, sub id), so results never depend on the order or
// thread in which trials run.

#include <complex>
#include <cstdint>
#include <random>

namespace uavmm {

using Rng = std::mt19937_64;

enum class StreamId : std::uint64_t {
  Scenario = 1,
  Jitter = 2,
  Navigation = 3,
  Sensing = 4,
  Noise = 5,
  Codebook = 6,
  Test = 7,
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for the stream identified by the tuple.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, StreamId stream,
                          std::uint64_t sub = 0);

Rng make_stream(std::uint64_t seed, std::uint64_t trial, StreamId stream,
                std::uint64_t sub = 0);

double uniform(Rng& rng, double lo, double hi);
double gaussian(Rng& rng, double mean, double stddev);

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
std::complex<double> complex_gaussian(Rng& rng, double variance);

}  // namespace uavmm
