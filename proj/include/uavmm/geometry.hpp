#pragma once
// Array geometry, UAV attitude and the cosine-angle (Psi, Omega) representation
// of the line-of-sight direction at both uniform planar arrays.
//
// Frames: the BS sits at the origin with its UPA in the y = 0 plane (axes x
// and z). The UAV UPA lies in the body z = 0 plane (axes x and y) and is
// rotated into the world frame by R = R_yaw * R_pitch * R_roll.
//
// Element ordering (layout contract): element k of an n1 x n2 array has
// first-axis index k / n2 and second-axis index k % n2, so the response
// vector is kron(v(Psi, n1), v(Omega, n2)).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uavmm {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

using Position3 = Vec3;

double dot(Vec3 a, Vec3 b);
double norm(Vec3 a);

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 identity3();
Mat3 transpose(const Mat3& m);
Vec3 operator*(const Mat3& m, Vec3 v);

// Wraps a cosine-angle difference into [-1, 1): (a - b + 1) mod 2 - 1.
double wrap_sub(double a, double b);
// (a + b + 1) mod 2 - 1.
double wrap_add(double a, double b);
// Maps any finite value onto [-1, 1); values already inside are returned unchanged.
double wrap_cosine(double a);

// Yaw/pitch/roll in radians, each normalized to (-pi, pi].
class Attitude {
 public:
  Attitude() = default;
  Attitude(double yaw, double pitch, double roll);

  double yaw() const { return yaw_; }
  double pitch() const { return pitch_; }
  double roll() const { return roll_; }

 private:
  double yaw_ = 0.0;
  double pitch_ = 0.0;
  double roll_ = 0.0;
};

// Cosine angle pair. Construction wraps into [-1, 1), so +1 becomes -1.
struct AoaPair {
  double psi = 0.0;
  double omega = 0.0;

  AoaPair() = default;
  AoaPair(double psi_, double omega_) : psi(wrap_cosine(psi_)), omega(wrap_cosine(omega_)) {}

  friend bool operator==(const AoaPair&, const AoaPair&) = default;
};

// Squared wrapped distance (psi1 - psi2)^2 + (omega1 - omega2)^2 under wrap_sub.
double wrapped_sq_error(AoaPair estimate, AoaPair truth);

// Unit propagation direction from the UAV towards the BS.
class Direction {
 public:
  // Requires p_bs != p_uav.
  static Direction between(Position3 p_bs, Position3 p_uav);

  Vec3 unit() const { return unit_; }
  double elevation() const { return elevation_; }
  double azimuth() const { return azimuth_; }
  double distance() const { return distance_; }

 private:
  Direction(Vec3 unit, double distance);
  Vec3 unit_;
  double elevation_ = 0.0;
  double azimuth_ = 0.0;
  double distance_ = 0.0;
};

inline Direction direction_between(Position3 p_bs, Position3 p_uav) {
  return Direction::between(p_bs, p_uav);
}

// Uniform planar array with half-wavelength spacing. `n_second` counts the
// z axis for the BS array and the y axis for the UAV array; `centered`
// selects the UAV convention of offsets measured from the array center.
struct UpaGeometry {
  std::size_t n_x = 1;
  std::size_t n_second = 1;
  double wavelength = 1.0;
  bool centered = false;

  static UpaGeometry bs(std::size_t n_x, std::size_t n_z, double wavelength);
  static UpaGeometry uav(std::size_t n_x, std::size_t n_y, double wavelength);

  std::size_t size() const { return n_x * n_second; }
  void validate() const;
};

Mat3 yaw_matrix(double alpha);
Mat3 pitch_matrix(double beta);
Mat3 roll_matrix(double gamma);

// Closed form of R_yaw(alpha) R_pitch(beta) R_roll(gamma).
Mat3 rotation_matrix(const Attitude& att);

std::vector<Position3> bs_antenna_offsets(const UpaGeometry& geom);
std::vector<Position3> uav_antenna_offsets(const UpaGeometry& geom);

// (e_x, e_z) of the direction.
AoaPair aoa_bs(const Direction& dir);

// First two components of R^T e.
AoaPair aoa_uav(const Direction& dir, const Attitude& att);

// Same quantity written out trigonometrically in terms of (elevation, azimuth)
// and the three Euler angles.
AoaPair aoa_uav_closed_form(const Direction& dir, const Attitude& att);

// Raw (unwrapped) UAV cosines; used where derivatives are taken.
std::array<double, 2> uav_cosines(Vec3 unit, const Attitude& att);

// Element n: exp(j pi n psi), times exp(-j pi psi (N-1)/2) when centered.
CVector steering(double psi, std::size_t n, bool centered);
void steering_into(double psi, bool centered, std::span<cd> out);

// kron(steering(psi, n_x), steering(omega, n_second)) with the geometry's centering.
CVector array_response(AoaPair aoa, const UpaGeometry& geom);
CVector array_response(double psi, double omega, const UpaGeometry& geom);

// Element k: exp(j 2 pi (R a_k)^T e / wavelength). Direct per-element evaluation
// used to check the Kronecker factorization.
CVector exact_array_response(std::span<const Position3> offsets, const Mat3& rotation,
                             Vec3 unit, double wavelength);

}  // namespace uavmm
