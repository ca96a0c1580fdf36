#pragma once
// Monte-Carlo beam-training experiments.
//
// Trial t draws its scenario, jitter, navigation error, sensing matrices and
// noise from streams derived from (seed, t), so every trial is reproducible in
// isolation and the result does not depend on the thread count. Within a
// trial the noise vector and the sensing matrices are shared by all transmit
// powers and all training lengths (prefixes of one draw), which keeps the
// comparisons along each curve paired.

#include <cstdint>
#include <string>
#include <vector>

#include "uavmm/harness/config.hpp"

namespace uavmm {

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Method method = Method::NavOnly;
  double tx_power_dbm = 0.0;
  std::size_t n_measurements = 0;  // 0 for nav-only
  double psi_b = 0.0;
  double omega_b = 0.0;
  double psi_u = 0.0;
  double omega_u = 0.0;
  double psi_b_nav = 0.0;
  double omega_b_nav = 0.0;
  double psi_u_nav = 0.0;
  double omega_u_nav = 0.0;
  double psi_u_est = 0.0;
  double omega_u_est = 0.0;
  double sq_error = 0.0;
  double received_power_dbm = 0.0;
  double max_power_dbm = 0.0;
  bool misaligned = false;
  double rate_bps_hz = 0.0;
  double spectral_efficiency = 0.0;  // rate * (N_coh - N) / N_coh
};

struct SummaryRow {
  Method method = Method::NavOnly;
  double tx_power_dbm = 0.0;
  std::size_t n_measurements = 0;
  std::size_t trials = 0;
  double mse = 0.0;
  double mse_se = 0.0;
  double misalignment_rate = 0.0;
  double misalignment_se = 0.0;
  double spectral_efficiency = 0.0;
  double spectral_efficiency_se = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by (trial, method, N, power)
  std::vector<SummaryRow> summary;   // ordered by (method, N, power)
};

// Records of one trial, for every configured method, N and power.
std::vector<TrialRecord> run_trial(const ScenarioConfig& cfg, std::uint64_t trial);

// All trials; cfg.threads workers. Validates cfg first.
ExperimentResult run_experiment(const ScenarioConfig& cfg);

std::vector<SummaryRow> summarize(const ScenarioConfig& cfg,
                                  const std::vector<TrialRecord>& records);

// One pipeline produces all three metrics; these name the one the caller reads.
inline ExperimentResult run_mse_experiment(const ScenarioConfig& cfg) { return run_experiment(cfg); }
inline ExperimentResult run_misalignment_experiment(const ScenarioConfig& cfg) {
  return run_experiment(cfg);
}
inline ExperimentResult run_spectral_efficiency(const ScenarioConfig& cfg) {
  return run_experiment(cfg);
}

// Sensing spec of a training method centered at the rough estimate.
SensingSpec method_spec(const ScenarioConfig& cfg, Method m, std::size_t n, AoaPair center);

}  // namespace uavmm
