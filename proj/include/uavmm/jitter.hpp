#pragma once
// Attitude jitter: independent zero-mean Gaussian perturbations of yaw, pitch
// and roll, and their first-order propagation to the UAV-side cosine angles.

#include <array>

#include "uavmm/geometry.hpp"
#include "uavmm/random.hpp"

namespace uavmm {

struct JitterModel {
  double sigma_alpha = 0.0;  // yaw std, rad
  double sigma_beta = 0.0;   // pitch std, rad
  double sigma_gamma = 0.0;  // roll std, rad

  static JitterModel isotropic(double sigma) { return {sigma, sigma, sigma}; }
  void validate() const;
};

using Mat2x3 = std::array<std::array<double, 3>, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct AoaDistribution {
  std::array<double, 2> mean{};  // (Psi_U, Omega_U) at the desired attitude
  Mat2 cov{};
  std::array<double, 2> stddev{};
  std::array<Interval, 2> three_sigma{};  // 99.73% marginal intervals
};

// d(Psi_U, Omega_U) / d(yaw, pitch, roll); the (0, 2) entry is identically zero.
Mat2x3 jacobian(const Attitude& att, const Direction& dir);

// Gaussian approximation: mean at the desired attitude, covariance J S J^T.
AoaDistribution aoa_distribution(const Attitude& desired, const Direction& dir,
                                 const JitterModel& jm);

Attitude sample_attitude(const Attitude& desired, const JitterModel& jm, Rng& rng);

// mean + J * deltas. Raw (unwrapped) cosines.
std::array<double, 2> linearized_aoa(const Attitude& desired, const Direction& dir,
                                     const std::array<double, 3>& deltas);

}  // namespace uavmm
