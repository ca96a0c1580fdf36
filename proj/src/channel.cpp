#include "uavmm/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "uavmm/error.hpp"
#include "uavmm/simd/kernels.hpp"

namespace uavmm {

namespace {

void check_pair(const UpaGeometry& bs_geom, const UpaGeometry& uav_geom) {
  bs_geom.validate();
  uav_geom.validate();
  if (bs_geom.centered || !uav_geom.centered)
    throw std::invalid_argument("expected BS (uncentered) and UAV (centered) geometries");
  if (bs_geom.wavelength != uav_geom.wavelength)
    throw std::invalid_argument("BS and UAV geometries must share the wavelength");
}

cd free_space_coeff(double distance, double wavelength) {
  return std::polar(wavelength / (4.0 * M_PI * distance),
                    -2.0 * M_PI * std::fmod(distance, wavelength) / wavelength);
}

}  // namespace

LosChannel los_channel(Position3 p_uav, const Attitude& att, const UpaGeometry& bs_geom,
                       const UpaGeometry& uav_geom) {
  check_pair(bs_geom, uav_geom);
  const Direction dir = Direction::between({0.0, 0.0, 0.0}, p_uav);
  if (dir.distance() < kMinFarFieldDistance)
    throw std::invalid_argument("los_channel: UAV closer than the far-field guard");
  LosChannel ch;
  ch.distance = dir.distance();
  ch.coeff = free_space_coeff(ch.distance, bs_geom.wavelength);
  ch.aoa_bs = aoa_bs(dir);
  ch.aoa_uav = aoa_uav(dir, att);
  ch.bs_geom = bs_geom;
  ch.uav_geom = uav_geom;
  // Raw cosines for the responses; the stored pairs are the wrapped view.
  const Vec3 e = dir.unit();
  const auto u = uav_cosines(e, att);
  ch.bs_response = array_response(e.x, e.z, bs_geom);
  ch.uav_response = array_response(u[0], u[1], uav_geom);
  return ch;
}

ComplexMatrix exact_channel_matrix(Position3 p_uav, const Attitude& att,
                                   const UpaGeometry& bs_geom, const UpaGeometry& uav_geom) {
  check_pair(bs_geom, uav_geom);
  if (norm(p_uav) < kMinFarFieldDistance)
    throw std::invalid_argument("exact_channel_matrix: UAV closer than the far-field guard");
  const auto bs_off = bs_antenna_offsets(bs_geom);
  const auto uav_off = uav_antenna_offsets(uav_geom);
  const Mat3 r = rotation_matrix(att);
  ComplexMatrix h{uav_off.size(), bs_off.size(), CVector(uav_off.size() * bs_off.size())};
  for (std::size_t k = 0; k < uav_off.size(); ++k) {
    const Position3 pk = p_uav + r * uav_off[k];
    for (std::size_t i = 0; i < bs_off.size(); ++i) {
      const double d = norm(bs_off[i] - pk);
      h.data[k * h.cols + i] = free_space_coeff(d, bs_geom.wavelength);
    }
  }
  return h;
}

Beamformer beamformer(AoaPair pointing, const UpaGeometry& geom, Side side) {
  geom.validate();
  Beamformer b;
  b.side = side;
  b.pointing = pointing;
  b.weights = array_response(pointing, geom);
  const double s = 1.0 / std::sqrt(static_cast<double>(geom.size()));
  for (cd& w : b.weights) w *= s;
  return b;
}

double beamforming_gain(const Beamformer& m, const LosChannel& ch, const Beamformer& f) {
  if (m.weights.size() != ch.uav_response.size() || f.weights.size() != ch.bs_response.size())
    throw std::invalid_argument("beamforming_gain: dimension mismatch");
  const cd rx = simd::dot_conj(m.weights, ch.uav_response);
  const cd tx = simd::dot_conj(ch.bs_response, f.weights);
  return std::norm(rx) * std::norm(tx);
}

double path_loss_db(double gain, double wavelength, double distance) {
  if (gain <= 0.0) return std::numeric_limits<double>::infinity();
  const double a = wavelength / (4.0 * M_PI * distance);
  return -10.0 * std::log10(gain * a * a);
}

cd effective_coeff(const LosChannel& ch, AoaPair bs_pointing) {
  const Beamformer f = beamformer(bs_pointing, ch.bs_geom, Side::Bs);
  return ch.coeff * simd::dot_conj(ch.bs_response, f.weights);
}

double dirichlet_ratio(double delta, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double den = std::sin(M_PI * delta / 2.0);
  if (std::abs(den) < 1e-9) {
    // L'Hopital around delta = 2k.
    return nn * std::cos(M_PI * delta * nn / 2.0) / std::cos(M_PI * delta / 2.0);
  }
  return std::sin(M_PI * delta * nn / 2.0) / den;
}

cd effective_coeff_closed_form(const LosChannel& ch, AoaPair bs_pointing) {
  const std::size_t nx = ch.bs_geom.n_x;
  const std::size_t nz = ch.bs_geom.n_second;
  // The kernel and phase factor combined are 2-periodic in each delta, so the
  // wrapped stored pair gives the same value as the raw cosines.
  const double d_psi = ch.aoa_bs.psi - bs_pointing.psi;
  const double d_omega = ch.aoa_bs.omega - bs_pointing.omega;
  const double phase = -M_PI * d_psi * (static_cast<double>(nx) - 1.0) / 2.0 -
                       M_PI * d_omega * (static_cast<double>(nz) - 1.0) / 2.0;
  const double mag = dirichlet_ratio(d_psi, nx) * dirichlet_ratio(d_omega, nz) /
                     std::sqrt(static_cast<double>(nx * nz));
  return ch.coeff * std::polar(1.0, phase) * mag;
}

cd measure(const LosChannel& ch, const Beamformer& f, const Beamformer& m, double tx_power_w,
           double noise_power_w, Rng& rng) {
  const cd rx = simd::dot_conj(m.weights, ch.uav_response);
  const cd tx = simd::dot_conj(ch.bs_response, f.weights);
  cd y = std::sqrt(tx_power_w) * ch.coeff * rx * tx;
  if (noise_power_w > 0.0) y += complex_gaussian(rng, noise_power_w);
  if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
    throw NumericalGuardError("measure: non-finite sample");
  return y;
}

CVector measure_columns(const LosChannel& ch, const Beamformer& f, std::span<const cd> columns,
                        std::size_t n_columns, double tx_power_w, double noise_power_w, Rng& rng) {
  const std::size_t nu = ch.uav_response.size();
  if (columns.size() != nu * n_columns)
    throw std::invalid_argument("measure_columns: sensing matrix size mismatch");
  const cd gain = std::sqrt(tx_power_w) * ch.coeff * simd::dot_conj(ch.bs_response, f.weights);
  CVector y(n_columns);
  for (std::size_t n = 0; n < n_columns; ++n) {
    const cd rx = simd::dot_conj(columns.subspan(n * nu, nu), ch.uav_response);
    y[n] = gain * rx;
    if (noise_power_w > 0.0) y[n] += complex_gaussian(rng, noise_power_w);
    if (!std::isfinite(y[n].real()) || !std::isfinite(y[n].imag()))
      throw NumericalGuardError("measure_columns: non-finite sample");
  }
  return y;
}

}  // namespace uavmm
