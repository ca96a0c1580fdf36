#pragma once
// Simulation configuration. The config file is a JSON object whose keys are
// the field names below; every field is optional and unknown keys are errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavmm/channel.hpp"
#include "uavmm/estimator.hpp"
#include "uavmm/jitter.hpp"

namespace uavmm {

enum class Method { NavOnly, FullyRandom, PartialType1, PartialType2 };

const char* method_name(Method m);
// Accepts the names printed by method_name: nav-only, fully-random,
// partial-type1, partial-type2.
std::optional<Method> parse_method(const std::string& s);

struct ScenarioConfig {
  double carrier_frequency_hz = 28e9;
  double noise_power_dbm = -84.0;
  std::size_t bs_nx = 16;
  std::size_t bs_nz = 16;
  std::size_t uav_nx = 16;
  std::size_t uav_ny = 16;
  double sigma_alpha_rad = 0.05;
  double sigma_beta_rad = 0.05;
  double sigma_gamma_rad = 0.05;
  double nav_position_std_m = 1.0;
  double hemisphere_radius_m = 200.0;
  double desired_pitch_rad = 0.0;
  double desired_roll_rad = 0.0;
  double sin_elevation_max = 0.95;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;  // set from the command line

  std::vector<std::string> methods{"nav-only", "fully-random", "partial-type1", "partial-type2"};
  std::vector<double> tx_power_dbm{-10.0, -6.0, -2.0, 2.0, 6.0, 10.0, 14.0, 16.0, 18.0, 22.0, 26.0};
  std::vector<std::size_t> n_measurements{6};
  std::size_t n_coherence = 100;
  double misalignment_margin_db = 10.0;

  std::size_t type1_n_a = 4;
  double type1_w = 0.15;
  std::size_t type2_n_a = 2;
  double type2_w = 0.1;

  std::size_t estimator_z_psi = 0;
  std::size_t estimator_z_omega = 0;
  std::size_t estimator_n_pk = 3;
  double estimator_step = 0.0;  // 0: signal-normalized default
  double estimator_epsilon = 1e-10;
  std::size_t estimator_max_iterations = 500;

  std::size_t threads = 1;

  double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
  UpaGeometry bs_geometry() const { return UpaGeometry::bs(bs_nx, bs_nz, wavelength()); }
  UpaGeometry uav_geometry() const { return UpaGeometry::uav(uav_nx, uav_ny, wavelength()); }
  JitterModel jitter() const { return {sigma_alpha_rad, sigma_beta_rad, sigma_gamma_rad}; }
  EstimatorConfig estimator() const;
  std::vector<Method> method_list() const;

  // Throws ConfigError naming the first offending key.
  void validate() const;
};

// Parses and validates. Throws ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
// JSON text with every key (sorted).
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace uavmm
