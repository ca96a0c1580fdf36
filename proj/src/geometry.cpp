#include "uavmm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavmm/simd/kernels.hpp"

namespace uavmm {

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

Mat3 transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Vec3 operator*(const Mat3& m, Vec3 v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

double wrap_cosine(double a) {
  if (a >= -1.0 && a < 1.0) return a;
  double r = std::fmod(a + 1.0, 2.0);
  if (r < 0.0) r += 2.0;
  r -= 1.0;
  // fmod of a value just below a multiple of 2 can round up to exactly 1.
  return r >= 1.0 ? -1.0 : r;
}

double wrap_sub(double a, double b) { return wrap_cosine(a - b); }
double wrap_add(double a, double b) { return wrap_cosine(a + b); }

double wrapped_sq_error(AoaPair estimate, AoaPair truth) {
  const double dp = wrap_sub(estimate.psi, truth.psi);
  const double dw = wrap_sub(estimate.omega, truth.omega);
  return dp * dp + dw * dw;
}

namespace {

double normalize_angle(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("attitude angle must be finite");
  if (a > -M_PI && a <= M_PI) return a;
  double r = std::remainder(a, 2.0 * M_PI);  // [-pi, pi]
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

}  // namespace

Attitude::Attitude(double yaw, double pitch, double roll)
    : yaw_(normalize_angle(yaw)), pitch_(normalize_angle(pitch)), roll_(normalize_angle(roll)) {}

Direction::Direction(Vec3 unit, double distance) : unit_(unit), distance_(distance) {
  elevation_ = std::asin(std::clamp(unit.z, -1.0, 1.0));
  // Azimuth is undefined on the poles; pinned to 0 there.
  azimuth_ = std::hypot(unit.x, unit.y) < 1e-15 ? 0.0 : std::atan2(unit.y, unit.x);
}

Direction Direction::between(Position3 p_bs, Position3 p_uav) {
  const Vec3 d = p_bs - p_uav;
  const double dist = norm(d);
  if (!(dist > 0.0) || !std::isfinite(dist)) {
    throw std::invalid_argument("direction_between: coincident or non-finite points");
  }
  return Direction((1.0 / dist) * d, dist);
}

UpaGeometry UpaGeometry::bs(std::size_t n_x, std::size_t n_z, double wavelength) {
  UpaGeometry g{n_x, n_z, wavelength, false};
  g.validate();
  return g;
}

UpaGeometry UpaGeometry::uav(std::size_t n_x, std::size_t n_y, double wavelength) {
  UpaGeometry g{n_x, n_y, wavelength, true};
  g.validate();
  return g;
}

void UpaGeometry::validate() const {
  if (n_x < 1 || n_second < 1) throw std::invalid_argument("UPA needs at least one element per axis");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw std::invalid_argument("UPA wavelength must be positive");
}

Mat3 yaw_matrix(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

Mat3 pitch_matrix(double b) {
  const double c = std::cos(b), s = std::sin(b);
  return {{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}};
}

Mat3 roll_matrix(double g) {
  const double c = std::cos(g), s = std::sin(g);
  return {{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}};
}

Mat3 rotation_matrix(const Attitude& att) {
  const double ca = std::cos(att.yaw()), sa = std::sin(att.yaw());
  const double cb = std::cos(att.pitch()), sb = std::sin(att.pitch());
  const double cg = std::cos(att.roll()), sg = std::sin(att.roll());
  return {{{ca * cb, ca * sb * sg - sa * cg, ca * sb * cg + sa * sg},
           {sa * cb, sa * sb * sg + ca * cg, sa * sb * cg - ca * sg},
           {-sb, cb * sg, cb * cg}}};
}

std::vector<Position3> bs_antenna_offsets(const UpaGeometry& geom) {
  if (geom.centered) throw std::invalid_argument("bs_antenna_offsets expects the BS convention");
  const double h = geom.wavelength / 2.0;
  std::vector<Position3> out;
  out.reserve(geom.size());
  for (std::size_t ix = 0; ix < geom.n_x; ++ix)
    for (std::size_t iz = 0; iz < geom.n_second; ++iz)
      out.push_back({h * static_cast<double>(ix), 0.0, h * static_cast<double>(iz)});
  return out;
}

std::vector<Position3> uav_antenna_offsets(const UpaGeometry& geom) {
  if (!geom.centered) throw std::invalid_argument("uav_antenna_offsets expects the UAV convention");
  const double h = geom.wavelength / 2.0;
  const double cx = (static_cast<double>(geom.n_x) - 1.0) / 2.0;
  const double cy = (static_cast<double>(geom.n_second) - 1.0) / 2.0;
  std::vector<Position3> out;
  out.reserve(geom.size());
  for (std::size_t ix = 0; ix < geom.n_x; ++ix)
    for (std::size_t iy = 0; iy < geom.n_second; ++iy)
      out.push_back({h * (static_cast<double>(ix) - cx), h * (static_cast<double>(iy) - cy), 0.0});
  return out;
}

AoaPair aoa_bs(const Direction& dir) { return {dir.unit().x, dir.unit().z}; }

std::array<double, 2> uav_cosines(Vec3 unit, const Attitude& att) {
  const Vec3 body = transpose(rotation_matrix(att)) * unit;
  return {body.x, body.y};
}

AoaPair aoa_uav(const Direction& dir, const Attitude& att) {
  const auto c = uav_cosines(dir.unit(), att);
  return {c[0], c[1]};
}

AoaPair aoa_uav_closed_form(const Direction& dir, const Attitude& att) {
  const double ca = std::cos(att.yaw()), sa = std::sin(att.yaw());
  const double cb = std::cos(att.pitch()), sb = std::sin(att.pitch());
  const double cg = std::cos(att.roll()), sg = std::sin(att.roll());
  const double cp = std::cos(dir.elevation()), sp = std::sin(dir.elevation());
  const double ct = std::cos(dir.azimuth()), st = std::sin(dir.azimuth());
  const double psi = ca * cb * cp * ct + sa * cb * cp * st - sb * sp;
  const double omega = (ca * sb * sg - sa * cg) * cp * ct + (sa * sb * sg + ca * cg) * cp * st +
                       cb * sg * sp;
  return {psi, omega};
}

void steering_into(double psi, bool centered, std::span<cd> out) {
  const std::size_t n = out.size();
  const double offset = centered ? (static_cast<double>(n) - 1.0) / 2.0 : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::polar(1.0, M_PI * psi * (static_cast<double>(k) - offset));
  }
}

CVector steering(double psi, std::size_t n, bool centered) {
  CVector v(n);
  steering_into(psi, centered, v);
  return v;
}

CVector array_response(double psi, double omega, const UpaGeometry& geom) {
  const CVector vx = steering(psi, geom.n_x, geom.centered);
  const CVector vy = steering(omega, geom.n_second, geom.centered);
  CVector out(geom.size());
  simd::kron(vx, vy, out);
  return out;
}

CVector array_response(AoaPair aoa, const UpaGeometry& geom) {
  return array_response(aoa.psi, aoa.omega, geom);
}

CVector exact_array_response(std::span<const Position3> offsets, const Mat3& rotation,
                             Vec3 unit, double wavelength) {
  CVector out;
  out.reserve(offsets.size());
  for (const Position3& a : offsets) {
    out.push_back(std::polar(1.0, 2.0 * M_PI * dot(rotation * a, unit) / wavelength));
  }
  return out;
}

}  // namespace uavmm
