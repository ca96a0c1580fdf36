// uavmm: command-line front end for the UAV mmWave beam-training simulator.
//
// Exit codes: 0 success, 1 other failure, 2 configuration error,
// 3 numerical guard tripped.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavmm/error.hpp"
#include "uavmm/harness/codebook.hpp"
#include "uavmm/harness/config.hpp"
#include "uavmm/harness/csv.hpp"
#include "uavmm/harness/experiments.hpp"
#include "uavmm/harness/scenario.hpp"
#include "uavmm/harness/selftest.hpp"
#include "uavmm/sensing.hpp"

namespace {

using namespace uavmm;

struct ScenarioArgs {
  int preset = 1;
  std::vector<double> position;
  std::vector<double> attitude;

  void add(CLI::App* app) {
    app->add_option("--scenario", preset, "Reference geometry 1, 2 or 3")->check(CLI::Range(1, 3));
    app->add_option("--position", position, "UAV position x y z in meters")->expected(3);
    app->add_option("--attitude", attitude, "Desired yaw pitch roll in radians")->expected(3);
  }
  Scenario get() const {
    Scenario s = reference_scenario(preset);
    if (!position.empty()) s.p_uav = {position[0], position[1], position[2]};
    if (!attitude.empty()) s.desired = Attitude(attitude[0], attitude[1], attitude[2]);
    return s;
  }
};

// Output file, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("--out", "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ScenarioConfig load_or_default(const std::string& path) {
  if (path.empty()) {
    ScenarioConfig c;
    c.validate();
    return c;
  }
  return load_config(path);
}

std::optional<Method> training_method(const std::string& name) {
  auto m = parse_method(name);
  if (!m || *m == Method::NavOnly) return std::nullopt;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV mmWave channel, attitude jitter and beam-training simulator"};
  app.require_subcommand(1);

  // scenario-stats
  auto* stats = app.add_subcommand("scenario-stats", "Gaussian AoA statistics under attitude jitter");
  ScenarioArgs stats_sc;
  stats_sc.add(stats);
  double sigma = 0.05;
  std::optional<double> sa, sb, sg;
  stats->add_option("--sigma", sigma, "Jitter std for all three angles, rad");
  stats->add_option("--sigma-alpha", sa, "Yaw jitter std, rad");
  stats->add_option("--sigma-beta", sb, "Pitch jitter std, rad");
  stats->add_option("--sigma-gamma", sg, "Roll jitter std, rad");

  // pathloss
  auto* pl = app.add_subcommand("pathloss", "Path loss of beamforming schemes 1-3 over jitter draws");
  ScenarioArgs pl_sc;
  pl_sc.add(pl);
  std::string pl_config, pl_out;
  std::uint64_t pl_seed = 0;
  std::size_t pl_steps = 1000;
  pl->add_option("--config", pl_config, "Config file");
  pl->add_option("--seed", pl_seed, "Random seed")->required();
  pl->add_option("--steps", pl_steps, "Number of jitter draws");
  pl->add_option("--out", pl_out, "CSV output (default stdout)");

  // beamspace
  auto* bsp = app.add_subcommand("beamspace", "Captured-energy map of one sensing matrix");
  std::string bs_method = "partial-type2", bs_config, bs_out;
  std::uint64_t bs_seed = 0;
  std::size_t bs_n = 6, bs_grid = 64;
  double bs_cpsi = 0.0, bs_comega = 0.0;
  bsp->add_option("--method", bs_method, "fully-random, partial-type1 or partial-type2");
  bsp->add_option("--config", bs_config, "Config file (array sizes and sub-array parameters)");
  bsp->add_option("--seed", bs_seed, "Random seed")->required();
  bsp->add_option("-n,--n-measurements", bs_n, "Number of sensing vectors");
  bsp->add_option("--grid", bs_grid, "Grid points per axis")->check(CLI::Range(2, 4096));
  bsp->add_option("--center-psi", bs_cpsi, "Sensing center Psi");
  bsp->add_option("--center-omega", bs_comega, "Sensing center Omega");
  bsp->add_option("--out", bs_out, "CSV output (default stdout)");

  // mse / misalignment / spectral-efficiency
  struct ExpArgs {
    std::string config, out, records;
    std::uint64_t seed = 0;
    std::optional<std::size_t> trials, threads;
  };
  ExpArgs ea;
  auto add_experiment = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--config", ea.config, "Config file");
    s->add_option("--seed", ea.seed, "Random seed")->required();
    s->add_option("--trials", ea.trials, "Override the trial count");
    s->add_option("--threads", ea.threads, "Override the worker count");
    s->add_option("--out", ea.out, "Summary CSV (default stdout)");
    s->add_option("--records", ea.records, "Per-trial CSV");
    return s;
  };
  auto* mse = add_experiment("mse", "Monte-Carlo AoA mean squared error");
  auto* mis = add_experiment("misalignment", "Monte-Carlo beam misalignment rate");
  auto* se = add_experiment("spectral-efficiency", "Monte-Carlo spectral efficiency");

  // codebook
  auto* cb = app.add_subcommand("codebook", "Generate or inspect stored sensing matrices");
  cb->require_subcommand(1);
  auto* cb_gen = cb->add_subcommand("generate", "Generate a sensing matrix and write it to disk");
  std::string cb_method = "partial-type2", cb_config, cb_out, cb_in;
  std::uint64_t cb_seed = 0;
  std::size_t cb_n = 6;
  std::optional<std::size_t> cb_na;
  std::optional<double> cb_w;
  double cb_cpsi = 0.0, cb_comega = 0.0;
  cb_gen->add_option("--method", cb_method, "fully-random, partial-type1 or partial-type2");
  cb_gen->add_option("--config", cb_config, "Config file");
  cb_gen->add_option("--seed", cb_seed, "Random seed")->required();
  cb_gen->add_option("-n,--n-measurements", cb_n, "Number of sensing vectors");
  cb_gen->add_option("--n-a", cb_na, "Sub-array count (overrides the method)");
  cb_gen->add_option("--w", cb_w, "Center half-width (overrides the method)");
  cb_gen->add_option("--center-psi", cb_cpsi, "Sensing center Psi");
  cb_gen->add_option("--center-omega", cb_comega, "Sensing center Omega");
  cb_gen->add_option("--out", cb_out, "Output file")->required();
  auto* cb_inspect = cb->add_subcommand("inspect", "Print a codebook header and declared range");
  cb_inspect->add_option("file", cb_in, "Codebook file")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (stats->parsed()) {
      JitterModel jm{sa.value_or(sigma), sb.value_or(sigma), sg.value_or(sigma)};
      std::cout << format_aoa_report(stats_sc.get(), jm);
    } else if (pl->parsed()) {
      const ScenarioConfig cfg = load_or_default(pl_config);
      Output out(pl_out);
      write_pathloss_csv(out.stream(), pathloss_trace(pl_sc.get(), cfg, pl_steps, pl_seed));
    } else if (bsp->parsed()) {
      const ScenarioConfig cfg = load_or_default(bs_config);
      const auto m = training_method(bs_method);
      if (!m) throw ConfigError("--method", "unknown training method '" + bs_method + "'");
      Rng rng = make_stream(bs_seed, 0, StreamId::Sensing);
      const SensingMatrix sm =
          sensing_matrix(method_spec(cfg, *m, bs_n, AoaPair(bs_cpsi, bs_comega)), rng);
      Output out(bs_out);
      write_beamspace_csv(out.stream(), beamspace_map(sm, bs_grid, bs_grid));
    } else if (mse->parsed() || mis->parsed() || se->parsed()) {
      ScenarioConfig cfg = load_or_default(ea.config);
      cfg.seed = ea.seed;
      if (ea.trials) cfg.trials = *ea.trials;
      if (ea.threads) cfg.threads = *ea.threads;
      cfg.validate();
      const ExperimentResult res = run_experiment(cfg);
      const SummaryKind kind = mse->parsed()   ? SummaryKind::Mse
                               : mis->parsed() ? SummaryKind::Misalignment
                                               : SummaryKind::SpectralEfficiency;
      Output out(ea.out);
      write_summary_csv(out.stream(), res.summary, kind);
      if (!ea.records.empty()) {
        Output rec(ea.records);
        write_records_csv(rec.stream(), res.records);
      }
    } else if (cb_gen->parsed()) {
      const ScenarioConfig cfg = load_or_default(cb_config);
      const auto m = training_method(cb_method);
      if (!m) throw ConfigError("--method", "unknown training method '" + cb_method + "'");
      SensingSpec spec = method_spec(cfg, *m, cb_n, AoaPair(cb_cpsi, cb_comega));
      if (cb_na) spec.n_a = {*cb_na, *cb_na};
      if (cb_w) spec.w = {*cb_w, *cb_w};
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--n-a", e.what());
      }
      save_codebook(cb_out, make_codebook(spec, cb_seed));
    } else if (cb_inspect->parsed()) {
      const Codebook c = load_codebook(cb_in);
      const CodebookHeader& h = c.header;
      const SensingRange r = h.declared_range();
      std::printf("version %u\nn_x %u\nn_y %u\nn_columns %u\nn_a %u\nw %.9g\n"
                  "center %.9g %.9g\nseed %llu\nrange_psi %.9g %.9g\nrange_omega %.9g %.9g\n",
                  h.version, h.n_x, h.n_y, h.n_columns, h.n_a, h.w, h.center_psi, h.center_omega,
                  static_cast<unsigned long long>(h.seed), r.psi.lo(), r.psi.hi(), r.omega.lo(),
                  r.omega.hi());
    } else if (selftest->parsed()) {
      return run_selftest(std::cout) ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
