#include <doctest.h>

#include <cmath>
#include <sstream>

#include "uavmm/error.hpp"
#include "uavmm/harness/codebook.hpp"
#include "uavmm/harness/config.hpp"
#include "uavmm/harness/csv.hpp"
#include "uavmm/harness/experiments.hpp"
#include "uavmm/harness/scenario.hpp"
#include "uavmm/harness/units.hpp"

using namespace uavmm;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.bs_nx = c.bs_nz = 8;
  c.uav_nx = c.uav_ny = 8;
  c.trials = 12;
  c.seed = 5;
  c.tx_power_dbm = {-10.0, 10.0};
  c.n_measurements = {4, 6};
  return c;
}

std::string config_error_key(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("power units") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watts(-84.0) == doctest::Approx(3.981071705534973e-12));
  for (double p : {-120.0, -84.0, -3.5, 0.0, 26.0}) CHECK(watts_to_dbm(dbm_to_watts(p)) == doctest::Approx(p));
  CHECK(std::isinf(watts_to_dbm(0.0)));
}

TEST_CASE("pairwise sums and standard errors") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 7);
  double plain = 0.0;
  for (double x : v) plain += x;
  CHECK(pairwise_sum(v) == plain);
  CHECK(mean(v) == doctest::Approx(plain / 1000));
  const std::vector<double> c(50, 2.0);
  CHECK(standard_error(c) == 0.0);
  const std::vector<double> two{0.0, 2.0};
  CHECK(standard_error(two) == doctest::Approx(1.0));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("config parsing errors name the key") {
  CHECK(config_error_key(R"({"trials": 10, "bogus": 1})") == "bogus");
  CHECK(config_error_key(R"({"trials": "ten"})") == "trials");
  CHECK(config_error_key(R"({"type1_n_a": 3})") == "type1_n_a");
  CHECK(config_error_key(R"({"methods": ["nav-only", "magic"]})") == "methods");
  CHECK(config_error_key(R"({"sigma_alpha_rad": -1})") == "sigma_alpha_rad");
  CHECK(config_error_key(R"({"n_measurements": [200]})") == "n_measurements");
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config defaults and round trip") {
  const ScenarioConfig d = parse_config("{}");
  CHECK(d.carrier_frequency_hz == 28e9);
  CHECK(d.noise_power_dbm == -84.0);
  CHECK(d.trials == 1000);
  CHECK(d.n_coherence == 100);
  CHECK(d.method_list().size() == 4);
  ScenarioConfig c = small_config();
  c.methods = {"partial-type2", "nav-only"};
  const ScenarioConfig r = parse_config(dump_config(c));
  CHECK(dump_config(r) == dump_config(c));
  CHECK(r.method_list() == std::vector<Method>{Method::PartialType2, Method::NavOnly});
}

TEST_CASE("scenario sampling stays on the hemisphere") {
  const ScenarioConfig cfg;
  Rng rng = make_stream(80, 0, StreamId::Test);
  for (int k = 0; k < 2000; ++k) {
    const Scenario s = sample_scenario(cfg, rng);
    const double r = std::sqrt(s.p_uav.x * s.p_uav.x + s.p_uav.y * s.p_uav.y + s.p_uav.z * s.p_uav.z);
    REQUIRE(r == doctest::Approx(200.0));
    REQUIRE(s.p_uav.z > 0.0);
    REQUIRE(s.p_uav.z <= 0.95 * 200.0 + 1e-9);
    REQUIRE(std::abs(s.desired.yaw()) <= M_PI);
    REQUIRE(s.desired.pitch() == 0.0);
  }
}

TEST_CASE("navigation error statistics") {
  const ScenarioConfig cfg;
  const Position3 p{-100.0, 100.0, 50.0};
  Rng rng = make_stream(81, 0, StreamId::Test);
  const int n = 20000;
  double s2 = 0.0;
  int close = 0;
  const AoaPair truth = aoa_bs(Direction::between({0, 0, 0}, p));
  for (int k = 0; k < n; ++k) {
    const NavEstimate e = nav_estimate(p, Attitude(0.3, 0, 0), cfg, rng);
    s2 += (e.position.x - p.x) * (e.position.x - p.x);
    if (std::sqrt(wrapped_sq_error(e.bs, truth)) < 0.02) ++close;
    REQUIRE(e.attitude.yaw() == 0.3);
  }
  CHECK(std::sqrt(s2 / n) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(close >= 0.99 * n);
}

TEST_CASE("path loss trace ordering") {
  const ScenarioConfig cfg;
  const auto rows = pathloss_trace(reference_scenario(1), cfg, 300, 9);
  REQUIRE(rows.size() == 300);
  for (const PathlossRow& r : rows) {
    // Matched beams on both sides can only lose to a mismatch.
    REQUIRE(r.scheme1_db <= r.scheme2_db + 1e-9);
    REQUIRE(r.scheme1_db <= r.scheme3_db + 1e-9);
    REQUIRE(r.scheme1_db == doctest::Approx(56.742).epsilon(1e-4));
  }
  const auto again = pathloss_trace(reference_scenario(1), cfg, 300, 9);
  CHECK(again[17].scheme3_db == rows[17].scheme3_db);
  CHECK_THROWS(reference_scenario(4));
}

TEST_CASE("experiment determinism and thread independence") {
  ScenarioConfig c = small_config();
  const ExperimentResult a = run_experiment(c);
  c.threads = 3;
  const ExperimentResult b = run_experiment(c);
  REQUIRE(a.records.size() == b.records.size());
  // 12 trials x (nav-only 2 powers + 3 methods x 2 N x 2 powers)
  CHECK(a.records.size() == 12 * (2 + 3 * 2 * 2));
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    REQUIRE(a.records[i].sq_error == b.records[i].sq_error);
    REQUIRE(a.records[i].spectral_efficiency == b.records[i].spectral_efficiency);
  }
  std::ostringstream sa, sb;
  write_records_csv(sa, a.records);
  write_records_csv(sb, b.records);
  CHECK(sa.str() == sb.str());
  CHECK(a.summary.size() == 2 + 3 * 2 * 2);
}

TEST_CASE("single-trial records are consistent") {
  ScenarioConfig c = small_config();
  c.validate();
  const auto rec = run_trial(c, 3);
  for (const TrialRecord& r : rec) {
    REQUIRE(r.received_power_dbm <= r.max_power_dbm + 1e-9);
    REQUIRE(r.misaligned == (r.received_power_dbm < r.max_power_dbm - 10.0));
    const double nc = 100.0;
    REQUIRE(r.spectral_efficiency ==
            doctest::Approx(r.rate_bps_hz * (nc - static_cast<double>(r.n_measurements)) / nc));
    if (r.method == Method::NavOnly) {
      REQUIRE(r.n_measurements == 0);
      REQUIRE(r.psi_u_est == r.psi_u_nav);
    }
  }
  // Same trial rerun alone reproduces the same numbers.
  const auto again = run_trial(c, 3);
  CHECK(again.back().sq_error == rec.back().sq_error);
}

TEST_CASE("a perfect estimate is never misaligned") {
  ScenarioConfig c = small_config();
  c.methods = {"nav-only"};
  c.nav_position_std_m = 0.0;
  c.sigma_alpha_rad = c.sigma_beta_rad = c.sigma_gamma_rad = 0.0;
  c.trials = 50;
  const ExperimentResult r = run_experiment(c);
  for (const SummaryRow& s : r.summary) {
    CHECK(s.misalignment_rate == 0.0);
    CHECK(s.mse < 1e-20);
  }
}

TEST_CASE("training for the whole coherence block leaves no throughput") {
  ScenarioConfig c = small_config();
  c.methods = {"fully-random"};
  c.n_coherence = 6;
  c.n_measurements = {6};
  c.trials = 3;
  for (const TrialRecord& r : run_experiment(c).records) CHECK(r.spectral_efficiency == 0.0);
}

TEST_CASE("summary CSV layout") {
  ScenarioConfig c = small_config();
  c.trials = 2;
  const ExperimentResult r = run_experiment(c);
  std::ostringstream out;
  write_summary_csv(out, r.summary, SummaryKind::Mse);
  const std::string s = out.str();
  CHECK(s.rfind("method,", 0) == 0);
  CHECK(s.find("\r\n") != std::string::npos);
  CHECK(s.find("nav-only") != std::string::npos);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.333333333");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("codebook round trip and corruption") {
  const UpaGeometry g = UpaGeometry::uav(8, 8, 0.01);
  const Codebook cb = make_codebook(SensingSpec::partial(g, 5, 2, 0.1, AoaPair(0.2, -0.1)), 42);
  std::stringstream ss;
  write_codebook(ss, cb);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == kCodebookHeaderBytes + 5 * 64 * 16);
  std::istringstream in(bytes);
  const Codebook back = read_codebook(in);
  CHECK(back.header.seed == 42);
  CHECK(back.header.n_a == 2);
  for (std::size_t k = 0; k < cb.matrix.data().size(); ++k)
    REQUIRE(back.matrix.data()[k] == cb.matrix.data()[k]);
  CHECK(back.matrix.declared_range().psi.half == doctest::Approx(0.1 + 2.0 / 8.0));

  std::istringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_codebook(cut));
  std::istringstream head(bytes.substr(0, 20));
  CHECK_THROWS(read_codebook(head));
  std::string bad = bytes;
  bad[0] = 9;
  std::istringstream ver(bad);
  CHECK_THROWS(read_codebook(ver));

  // Same spec and seed reproduce the same bytes.
  std::stringstream again;
  write_codebook(again, make_codebook(SensingSpec::partial(g, 5, 2, 0.1, AoaPair(0.2, -0.1)), 42));
  CHECK(again.str() == bytes);
}

TEST_CASE("codebook selection picks the tightest covering range") {
  const UpaGeometry g = UpaGeometry::uav(16, 16, 0.01);
  std::vector<CodebookHeader> set;
  for (const auto& [na, w] : {std::pair<std::size_t, double>{16, 0.0}, {4, 0.15}, {2, 0.1}})
    set.push_back(make_codebook(na == 16 ? SensingSpec::fully_random(g, 4)
                                         : SensingSpec::partial(g, 4, na, w),
                                1)
                      .header);
  AoaDistribution tight;
  tight.mean = {0.0, 0.0};
  tight.three_sigma = {Interval{-0.1, 0.1}, Interval{-0.05, 0.05}};
  CHECK(select_codebook(set, tight) == 2u);
  AoaDistribution mid = tight;
  mid.three_sigma[0] = Interval{-0.3, 0.3};
  CHECK(select_codebook(set, mid) == 1u);
  AoaDistribution wide = tight;
  wide.three_sigma[0] = Interval{-0.9, 0.9};
  CHECK(select_codebook(set, wide) == 0u);
  CHECK_FALSE(select_codebook({set[2]}, wide).has_value());
}
