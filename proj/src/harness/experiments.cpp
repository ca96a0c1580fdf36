#include "uavmm/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "uavmm/error.hpp"
#include "uavmm/harness/scenario.hpp"
#include "uavmm/harness/units.hpp"
#include "uavmm/simd/kernels.hpp"

namespace uavmm {

SensingSpec method_spec(const ScenarioConfig& cfg, Method m, std::size_t n, AoaPair center) {
  const UpaGeometry g = cfg.uav_geometry();
  switch (m) {
    case Method::FullyRandom: return SensingSpec::fully_random(g, n, center);
    case Method::PartialType1: return SensingSpec::partial(g, n, cfg.type1_n_a, cfg.type1_w, center);
    case Method::PartialType2: return SensingSpec::partial(g, n, cfg.type2_n_a, cfg.type2_w, center);
    case Method::NavOnly: break;
  }
  throw std::invalid_argument("nav-only has no sensing matrix");
}

namespace {

struct TrialState {
  LosChannel ch;
  NavEstimate nav;
  Beamformer f;       // BS beam at the rough BS-side estimate
  cd bs_gain;         // tau * v_B^H f
  double path_gain;   // |tau|^2
};

void fill_outcome(TrialRecord& r, const ScenarioConfig& cfg, const TrialState& s, AoaPair est,
                  double noise_w) {
  const Beamformer m = beamformer(est, s.ch.uav_geom, Side::Uav);
  const double g = beamforming_gain(m, s.ch, s.f);
  const double lin = g * s.path_gain;
  const double n_all = static_cast<double>(s.ch.bs_geom.size() * s.ch.uav_geom.size());
  r.psi_u_est = est.psi;
  r.omega_u_est = est.omega;
  r.sq_error = wrapped_sq_error(est, s.ch.aoa_uav);
  r.received_power_dbm = lin > 0.0 ? r.tx_power_dbm + 10.0 * std::log10(lin) : -INFINITY;
  r.max_power_dbm = r.tx_power_dbm + 10.0 * std::log10(n_all * s.path_gain);
  r.misaligned = r.received_power_dbm < r.max_power_dbm - cfg.misalignment_margin_db;
  const double snr = dbm_to_watts(r.tx_power_dbm) * lin / noise_w;
  r.rate_bps_hz = std::log2(1.0 + snr);
  const double nc = static_cast<double>(cfg.n_coherence);
  r.spectral_efficiency = r.rate_bps_hz * (nc - static_cast<double>(r.n_measurements)) / nc;
  if (!std::isfinite(r.sq_error) || !std::isfinite(r.rate_bps_hz))
    throw NumericalGuardError("trial " + std::to_string(r.trial) + ": non-finite metric");
}

}  // namespace

std::vector<TrialRecord> run_trial(const ScenarioConfig& cfg, std::uint64_t trial) {
  const UpaGeometry bs = cfg.bs_geometry();
  const UpaGeometry uav = cfg.uav_geometry();
  const std::uint64_t seed = cfg.seed;

  Rng sr = make_stream(seed, trial, StreamId::Scenario);
  Rng jr = make_stream(seed, trial, StreamId::Jitter);
  Rng nr = make_stream(seed, trial, StreamId::Navigation);
  Rng zr = make_stream(seed, trial, StreamId::Noise);
  const Scenario sc = sample_scenario(cfg, sr);
  const Attitude att = sample_attitude(sc.desired, cfg.jitter(), jr);

  TrialState s{los_channel(sc.p_uav, att, bs, uav), nav_estimate(sc.p_uav, sc.desired, cfg, nr),
               {}, {}, 0.0};
  s.f = beamformer(s.nav.bs, bs, Side::Bs);
  s.bs_gain = s.ch.coeff * simd::dot_conj(s.ch.bs_response, s.f.weights);
  s.path_gain = std::norm(s.ch.coeff);

  const double noise_w = dbm_to_watts(cfg.noise_power_dbm);
  const std::size_t n_max = *std::max_element(cfg.n_measurements.begin(), cfg.n_measurements.end());
  CVector noise(n_max);
  for (cd& z : noise) z = complex_gaussian(zr, noise_w);

  TrialRecord base;
  base.trial = trial;
  base.seed = seed;
  base.psi_b = s.ch.aoa_bs.psi;
  base.omega_b = s.ch.aoa_bs.omega;
  base.psi_u = s.ch.aoa_uav.psi;
  base.omega_u = s.ch.aoa_uav.omega;
  base.psi_b_nav = s.nav.bs.psi;
  base.omega_b_nav = s.nav.bs.omega;
  base.psi_u_nav = s.nav.uav.psi;
  base.omega_u_nav = s.nav.uav.omega;

  const EstimatorConfig ecfg = cfg.estimator();
  std::vector<TrialRecord> out;
  const auto methods = cfg.method_list();
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const Method method = methods[mi];
    base.method = method;
    if (method == Method::NavOnly) {
      for (double p : cfg.tx_power_dbm) {
        TrialRecord r = base;
        r.tx_power_dbm = p;
        r.n_measurements = 0;
        fill_outcome(r, cfg, s, s.nav.uav, noise_w);
        out.push_back(r);
      }
      continue;
    }
    // The sub id is the method itself so adding or reordering methods does not
    // change another method's matrix.
    Rng mr = make_stream(seed, trial, StreamId::Sensing, static_cast<std::uint64_t>(method));
    const SensingMatrix full = sensing_matrix(method_spec(cfg, method, n_max, s.nav.uav), mr);
    // Noiseless per-unit-power samples for every column.
    CVector clean(n_max);
    for (std::size_t k = 0; k < n_max; ++k)
      clean[k] = s.bs_gain * simd::dot_conj(full.column(k), s.ch.uav_response);

    for (std::size_t n : cfg.n_measurements) {
      const MleEstimator est(full.prefix(n), ecfg);
      CVector y(n);
      for (double p : cfg.tx_power_dbm) {
        const double amp = std::sqrt(dbm_to_watts(p));
        for (std::size_t k = 0; k < n; ++k) y[k] = amp * clean[k] + noise[k];
        const AoaEstimate e = est.estimate(y);
        TrialRecord r = base;
        r.tx_power_dbm = p;
        r.n_measurements = n;
        fill_outcome(r, cfg, s, e.aoa, noise_w);
        out.push_back(r);
      }
    }
  }
  return out;
}

ExperimentResult run_experiment(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<TrialRecord>> slots(cfg.trials);
  const std::size_t workers = std::min(cfg.threads, cfg.trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) slots[t] = run_trial(cfg, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < cfg.trials; t = next++) {
          try {
            slots[t] = run_trial(cfg, t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = cfg.trials;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  ExperimentResult res;
  for (auto& s : slots) {
    res.records.insert(res.records.end(), s.begin(), s.end());
    s.clear();
    s.shrink_to_fit();
  }
  res.summary = summarize(cfg, res.records);
  return res;
}

std::vector<SummaryRow> summarize(const ScenarioConfig& cfg,
                                  const std::vector<TrialRecord>& records) {
  struct Acc {
    std::vector<double> err, mis, se;
  };
  // Key order: method in config order, then N, then power in config order.
  const auto methods = cfg.method_list();
  auto method_rank = [&](Method m) {
    return static_cast<std::size_t>(std::find(methods.begin(), methods.end(), m) - methods.begin());
  };
  auto power_rank = [&](double p) {
    return static_cast<std::size_t>(
        std::find(cfg.tx_power_dbm.begin(), cfg.tx_power_dbm.end(), p) - cfg.tx_power_dbm.begin());
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Acc> groups;
  for (const TrialRecord& r : records) {
    Acc& a = groups[{method_rank(r.method), r.n_measurements, power_rank(r.tx_power_dbm)}];
    a.err.push_back(r.sq_error);
    a.mis.push_back(r.misaligned ? 1.0 : 0.0);
    a.se.push_back(r.spectral_efficiency);
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, a] : groups) {
    SummaryRow row;
    row.method = methods[std::get<0>(key)];
    row.n_measurements = std::get<1>(key);
    row.tx_power_dbm = cfg.tx_power_dbm[std::get<2>(key)];
    row.trials = a.err.size();
    row.mse = mean(a.err);
    row.mse_se = standard_error(a.err);
    row.misalignment_rate = mean(a.mis);
    row.misalignment_se = standard_error(a.mis);
    row.spectral_efficiency = mean(a.se);
    row.spectral_efficiency_se = standard_error(a.se);
    out.push_back(row);
  }
  return out;
}

}  // namespace uavmm
