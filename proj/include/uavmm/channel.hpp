#pragma once
// Rank-one line-of-sight channel H = tau * v_uav * v_bs^H between the BS and
// the UAV arrays, the per-element exact channel used to check it, analog
// beamformers, and noisy pilot measurements.
//
// H is never formed in the hot paths; everything goes through the two
// response vectors.

#include <complex>
#include <span>
#include <vector>

#include "uavmm/geometry.hpp"
#include "uavmm/random.hpp"

namespace uavmm {

inline constexpr double kSpeedOfLight = 3.0e8;
inline constexpr double kMinFarFieldDistance = 10.0;

struct LosChannel {
  cd coeff;  // wavelength / (4 pi d) * exp(-j 2 pi d / wavelength)
  AoaPair aoa_bs;
  AoaPair aoa_uav;
  double distance = 0.0;
  UpaGeometry bs_geom;
  UpaGeometry uav_geom;
  CVector bs_response;   // v_B
  CVector uav_response;  // v_U (centered)

  double wavelength() const { return bs_geom.wavelength; }
};

// Both geometries must share the wavelength. Throws for d < 10 m.
LosChannel los_channel(Position3 p_uav, const Attitude& att, const UpaGeometry& bs_geom,
                       const UpaGeometry& uav_geom);

// Dense N_U x N_B channel from the exact inter-element distances, row-major
// (row = UAV element). Test oracle only.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CVector data;
  cd operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

ComplexMatrix exact_channel_matrix(Position3 p_uav, const Attitude& att,
                                   const UpaGeometry& bs_geom, const UpaGeometry& uav_geom);

enum class Side { Bs, Uav };

struct Beamformer {
  CVector weights;  // unit norm, constant modulus 1/sqrt(N)
  Side side = Side::Bs;
  AoaPair pointing;
};

Beamformer beamformer(AoaPair pointing, const UpaGeometry& geom, Side side);

// |m^H v_U|^2 |v_B^H f|^2
double beamforming_gain(const Beamformer& m, const LosChannel& ch, const Beamformer& f);

// -10 log10(G lambda^2 / (4 pi d)^2); +inf for G == 0.
double path_loss_db(double gain, double wavelength, double distance);

// tau * (v_B^H f_B(bs_pointing)), by inner product.
cd effective_coeff(const LosChannel& ch, AoaPair bs_pointing);

// Same coefficient from the Dirichlet-kernel closed form.
cd effective_coeff_closed_form(const LosChannel& ch, AoaPair bs_pointing);

// sin(pi delta n / 2) / sin(pi delta / 2), continuous at the removable points.
double dirichlet_ratio(double delta, std::size_t n);

// One pilot: sqrt(P) tau (m^H v_U)(v_B^H f) + eta, eta ~ CN(0, noise_power).
cd measure(const LosChannel& ch, const Beamformer& f, const Beamformer& m, double tx_power_w,
           double noise_power_w, Rng& rng);

// Measurements for every column of a column-major N_U x N sensing matrix with
// a fixed BS beam. Draws the noise samples in column order.
CVector measure_columns(const LosChannel& ch, const Beamformer& f, std::span<const cd> columns,
                        std::size_t n_columns, double tx_power_w, double noise_power_w, Rng& rng);

}  // namespace uavmm
