#pragma once
// Per-trial world state: where the UAV hovers, how it is supposed to be
// oriented, and what its navigation system reports.

#include <string>
#include <vector>

#include "uavmm/channel.hpp"
#include "uavmm/harness/config.hpp"
#include "uavmm/jitter.hpp"
#include "uavmm/random.hpp"

namespace uavmm {

struct Scenario {
  Position3 p_uav;
  Attitude desired;
};

// Uniform on the upper hemisphere of radius hemisphere_radius_m (by
// rejection of |sin elevation| > sin_elevation_max); desired yaw uniform on
// (-pi, pi), pitch and roll from the config.
Scenario sample_scenario(const ScenarioConfig& cfg, Rng& rng);

struct NavEstimate {
  Position3 position;
  Attitude attitude;
  AoaPair bs;   // rough (Psi_B, Omega_B)
  AoaPair uav;  // rough (Psi_U, Omega_U)

  // Derives the rough pairs from the position and attitude estimates.
  static NavEstimate from(Position3 p_hat, const Attitude& att);
};

// p_hat = p + N(0, std^2 I); the attitude estimate is the desired attitude.
NavEstimate nav_estimate(Position3 p_uav, const Attitude& desired, const ScenarioConfig& cfg,
                         Rng& rng);

struct PathlossRow {
  std::size_t step = 0;
  Attitude attitude;  // jittered
  double scheme1_db = 0.0;  // true angles on both sides
  double scheme2_db = 0.0;  // navigation angles at the BS, true at the UAV
  double scheme3_db = 0.0;  // navigation angles on both sides
};

// One jitter draw and one navigation draw per step.
std::vector<PathlossRow> pathloss_trace(const Scenario& s, const ScenarioConfig& cfg,
                                        std::size_t n_steps, std::uint64_t seed);

// The three fixed geometries used to illustrate attitude-dependent spread.
Scenario reference_scenario(int index);

// Human-readable report of the Gaussian AoA approximation.
std::string format_aoa_report(const Scenario& s, const JitterModel& jm);

}  // namespace uavmm
