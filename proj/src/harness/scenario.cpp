#include "uavmm/harness/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace uavmm {

Scenario sample_scenario(const ScenarioConfig& cfg, Rng& rng) {
  // z uniform on [0, r] gives a uniform area density on the sphere cap.
  double sin_el = 0.0;
  do {
    sin_el = uniform(rng, 0.0, 1.0);
  } while (sin_el > cfg.sin_elevation_max);
  const double az = uniform(rng, -M_PI, M_PI);
  const double cos_el = std::sqrt(1.0 - sin_el * sin_el);
  const double r = cfg.hemisphere_radius_m;
  Scenario s;
  s.p_uav = {r * cos_el * std::cos(az), r * cos_el * std::sin(az), r * sin_el};
  s.desired = Attitude(uniform(rng, -M_PI, M_PI), cfg.desired_pitch_rad, cfg.desired_roll_rad);
  return s;
}

NavEstimate NavEstimate::from(Position3 p_hat, const Attitude& att) {
  const Direction dir = Direction::between({0.0, 0.0, 0.0}, p_hat);
  return {p_hat, att, aoa_bs(dir), aoa_uav(dir, att)};
}

NavEstimate nav_estimate(Position3 p_uav, const Attitude& desired, const ScenarioConfig& cfg,
                         Rng& rng) {
  const double sd = cfg.nav_position_std_m;
  const double nx = gaussian(rng, 0.0, 1.0) * sd;
  const double ny = gaussian(rng, 0.0, 1.0) * sd;
  const double nz = gaussian(rng, 0.0, 1.0) * sd;
  return NavEstimate::from(p_uav + Position3{nx, ny, nz}, desired);
}

std::vector<PathlossRow> pathloss_trace(const Scenario& s, const ScenarioConfig& cfg,
                                        std::size_t n_steps, std::uint64_t seed) {
  const UpaGeometry bs = cfg.bs_geometry();
  const UpaGeometry uav = cfg.uav_geometry();
  const JitterModel jm = cfg.jitter();
  std::vector<PathlossRow> out;
  out.reserve(n_steps);
  for (std::size_t t = 0; t < n_steps; ++t) {
    Rng jr = make_stream(seed, t, StreamId::Jitter);
    Rng nr = make_stream(seed, t, StreamId::Navigation);
    const Attitude att = sample_attitude(s.desired, jm, jr);
    const NavEstimate nav = nav_estimate(s.p_uav, s.desired, cfg, nr);
    const LosChannel ch = los_channel(s.p_uav, att, bs, uav);

    const Beamformer f_true = beamformer(ch.aoa_bs, bs, Side::Bs);
    const Beamformer f_nav = beamformer(nav.bs, bs, Side::Bs);
    const Beamformer m_true = beamformer(ch.aoa_uav, uav, Side::Uav);
    const Beamformer m_nav = beamformer(nav.uav, uav, Side::Uav);
    const double lam = ch.wavelength(), d = ch.distance;
    PathlossRow row;
    row.step = t;
    row.attitude = att;
    row.scheme1_db = path_loss_db(beamforming_gain(m_true, ch, f_true), lam, d);
    row.scheme2_db = path_loss_db(beamforming_gain(m_true, ch, f_nav), lam, d);
    row.scheme3_db = path_loss_db(beamforming_gain(m_nav, ch, f_nav), lam, d);
    out.push_back(row);
  }
  return out;
}

Scenario reference_scenario(int index) {
  switch (index) {
    case 1: return {{-100.0, 100.0, 50.0}, Attitude(0.0, 0.0, 0.0)};
    case 2: return {{-100.0, 100.0, 50.0}, Attitude(1.0, 0.0, 0.0)};
    case 3: return {{0.0, 100.0, 50.0}, Attitude(0.0, 0.0, 0.0)};
    default: throw std::invalid_argument("reference scenario index must be 1, 2 or 3");
  }
}

std::string format_aoa_report(const Scenario& s, const JitterModel& jm) {
  const Direction dir = Direction::between({0.0, 0.0, 0.0}, s.p_uav);
  const AoaDistribution a = aoa_distribution(s.desired, dir, jm);
  const AoaPair bs = aoa_bs(dir);
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "position_m        %.6g %.6g %.6g\n"
                "attitude_rad      %.6g %.6g %.6g\n"
                "sigma_rad         %.6g %.6g %.6g\n"
                "distance_m        %.6f\n"
                "aoa_bs            %.6f %.6f\n"
                "mean              %.6f %.6f\n"
                "cov               %.6f %.6f\n"
                "                  %.6f %.6f\n"
                "stddev            %.6f %.6f\n"
                "interval_psi      %.6f %.6f\n"
                "interval_omega    %.6f %.6f\n",
                s.p_uav.x, s.p_uav.y, s.p_uav.z, s.desired.yaw(), s.desired.pitch(),
                s.desired.roll(), jm.sigma_alpha, jm.sigma_beta, jm.sigma_gamma, dir.distance(),
                bs.psi, bs.omega, a.mean[0], a.mean[1], a.cov[0][0], a.cov[0][1], a.cov[1][0],
                a.cov[1][1], a.stddev[0], a.stddev[1], a.three_sigma[0].lo, a.three_sigma[0].hi,
                a.three_sigma[1].lo, a.three_sigma[1].hi);
  return buf;
}

}  // namespace uavmm
