#include "uavmm/jitter.hpp"

#include <cmath>
#include <stdexcept>

namespace uavmm {

void JitterModel::validate() const {
  if (!(sigma_alpha >= 0.0) || !(sigma_beta >= 0.0) || !(sigma_gamma >= 0.0))
    throw std::invalid_argument("jitter standard deviations must be non-negative");
}

Mat2x3 jacobian(const Attitude& att, const Direction& dir) {
  const double ca = std::cos(att.yaw()), sa = std::sin(att.yaw());
  const double cb = std::cos(att.pitch()), sb = std::sin(att.pitch());
  const double cg = std::cos(att.roll()), sg = std::sin(att.roll());
  const double cp = std::cos(dir.elevation()), sp = std::sin(dir.elevation());
  const double ct = std::cos(dir.azimuth()), st = std::sin(dir.azimuth());
  const double ex = cp * ct, ey = cp * st, ez = sp;

  Mat2x3 j{};
  j[0][0] = -sa * cb * ex + ca * cb * ey;
  j[0][1] = -ca * sb * ex - sa * sb * ey - cb * ez;
  j[0][2] = 0.0;
  j[1][0] = (-sa * sb * sg - ca * cg) * ex + (ca * sb * sg - sa * cg) * ey;
  j[1][1] = ca * cb * sg * ex + sa * cb * sg * ey - sb * sg * ez;
  j[1][2] = (ca * sb * cg + sa * sg) * ex + (sa * sb * cg - ca * sg) * ey + cb * cg * ez;
  return j;
}

AoaDistribution aoa_distribution(const Attitude& desired, const Direction& dir,
                                 const JitterModel& jm) {
  jm.validate();
  const Mat2x3 j = jacobian(desired, dir);
  const std::array<double, 3> var{jm.sigma_alpha * jm.sigma_alpha, jm.sigma_beta * jm.sigma_beta,
                                  jm.sigma_gamma * jm.sigma_gamma};
  AoaDistribution out;
  out.mean = uav_cosines(dir.unit(), desired);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += j[r][k] * var[k] * j[c][k];
      out.cov[r][c] = s;
    }
  }
  // Exact symmetry: both off-diagonals come from the same sum order.
  out.cov[1][0] = out.cov[0][1];
  for (int r = 0; r < 2; ++r) {
    out.stddev[r] = std::sqrt(out.cov[r][r]);
    out.three_sigma[r] = {out.mean[r] - 3.0 * out.stddev[r], out.mean[r] + 3.0 * out.stddev[r]};
  }
  return out;
}

Attitude sample_attitude(const Attitude& desired, const JitterModel& jm, Rng& rng) {
  jm.validate();
  // Draws happen unconditionally so stream consumption does not depend on sigma.
  const double da = gaussian(rng, 0.0, 1.0) * jm.sigma_alpha;
  const double db = gaussian(rng, 0.0, 1.0) * jm.sigma_beta;
  const double dg = gaussian(rng, 0.0, 1.0) * jm.sigma_gamma;
  return {desired.yaw() + da, desired.pitch() + db, desired.roll() + dg};
}

std::array<double, 2> linearized_aoa(const Attitude& desired, const Direction& dir,
                                     const std::array<double, 3>& deltas) {
  const Mat2x3 j = jacobian(desired, dir);
  auto mu = uav_cosines(dir.unit(), desired);
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k < 3; ++k) mu[r] += j[r][k] * deltas[k];
  return mu;
}

}  // namespace uavmm
