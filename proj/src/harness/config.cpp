#include "uavmm/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "uavmm/error.hpp"

namespace uavmm {

using nlohmann::json;

const char* method_name(Method m) {
  switch (m) {
    case Method::NavOnly: return "nav-only";
    case Method::FullyRandom: return "fully-random";
    case Method::PartialType1: return "partial-type1";
    case Method::PartialType2: return "partial-type2";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& s) {
  for (Method m : {Method::NavOnly, Method::FullyRandom, Method::PartialType1, Method::PartialType2})
    if (s == method_name(m)) return m;
  return std::nullopt;
}

namespace {

// One visitor drives parsing, dumping and the list of known keys.
template <class Cfg, class F>
void for_each_field(Cfg& c, F&& f) {
  f("carrier_frequency_hz", c.carrier_frequency_hz);
  f("noise_power_dbm", c.noise_power_dbm);
  f("bs_nx", c.bs_nx);
  f("bs_nz", c.bs_nz);
  f("uav_nx", c.uav_nx);
  f("uav_ny", c.uav_ny);
  f("sigma_alpha_rad", c.sigma_alpha_rad);
  f("sigma_beta_rad", c.sigma_beta_rad);
  f("sigma_gamma_rad", c.sigma_gamma_rad);
  f("nav_position_std_m", c.nav_position_std_m);
  f("hemisphere_radius_m", c.hemisphere_radius_m);
  f("desired_pitch_rad", c.desired_pitch_rad);
  f("desired_roll_rad", c.desired_roll_rad);
  f("sin_elevation_max", c.sin_elevation_max);
  f("trials", c.trials);
  f("seed", c.seed);
  f("methods", c.methods);
  f("tx_power_dbm", c.tx_power_dbm);
  f("n_measurements", c.n_measurements);
  f("n_coherence", c.n_coherence);
  f("misalignment_margin_db", c.misalignment_margin_db);
  f("type1_n_a", c.type1_n_a);
  f("type1_w", c.type1_w);
  f("type2_n_a", c.type2_n_a);
  f("type2_w", c.type2_w);
  f("estimator_z_psi", c.estimator_z_psi);
  f("estimator_z_omega", c.estimator_z_omega);
  f("estimator_n_pk", c.estimator_n_pk);
  f("estimator_step", c.estimator_step);
  f("estimator_epsilon", c.estimator_epsilon);
  f("estimator_max_iterations", c.estimator_max_iterations);
  f("threads", c.threads);
}

void read_value(const std::string& key, const json& v, double& out) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError(key, "must be finite");
}

template <class T>
  requires std::is_unsigned_v<T>
void read_value(const std::string& key, const json& v, T& out) {
  if (!v.is_number_unsigned()) {
    if (v.is_number_integer() && v.get<long long>() >= 0) {
      out = static_cast<T>(v.get<long long>());
      return;
    }
    throw ConfigError(key, "expected a non-negative integer");
  }
  out = v.get<T>();
}

void read_value(const std::string& key, const json& v, std::string& out) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  out = v.get<std::string>();
}

template <class T>
void read_value(const std::string& key, const json& v, std::vector<T>& out) {
  if (!v.is_array()) throw ConfigError(key, "expected an array");
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    T x{};
    read_value(key + "[" + std::to_string(i) + "]", v[i], x);
    out.push_back(x);
  }
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

EstimatorConfig ScenarioConfig::estimator() const {
  EstimatorConfig e;
  e.z_psi = estimator_z_psi;
  e.z_omega = estimator_z_omega;
  e.n_pk = estimator_n_pk;
  if (estimator_step > 0.0) e.step = estimator_step;
  e.epsilon = estimator_epsilon;
  e.max_iterations = estimator_max_iterations;
  return e;
}

std::vector<Method> ScenarioConfig::method_list() const {
  std::vector<Method> out;
  for (const auto& s : methods) {
    auto m = parse_method(s);
    if (!m) throw ConfigError("methods", "unknown method '" + s + "'");
    out.push_back(*m);
  }
  return out;
}

void ScenarioConfig::validate() const {
  require(carrier_frequency_hz > 0.0, "carrier_frequency_hz", "must be positive");
  require(bs_nx >= 1, "bs_nx", "must be at least 1");
  require(bs_nz >= 1, "bs_nz", "must be at least 1");
  require(uav_nx >= 1, "uav_nx", "must be at least 1");
  require(uav_ny >= 1, "uav_ny", "must be at least 1");
  require(sigma_alpha_rad >= 0.0, "sigma_alpha_rad", "must be non-negative");
  require(sigma_beta_rad >= 0.0, "sigma_beta_rad", "must be non-negative");
  require(sigma_gamma_rad >= 0.0, "sigma_gamma_rad", "must be non-negative");
  require(nav_position_std_m >= 0.0, "nav_position_std_m", "must be non-negative");
  require(hemisphere_radius_m > kMinFarFieldDistance + 0.0, "hemisphere_radius_m",
          "must exceed the 10 m far-field guard");
  require(sin_elevation_max > 0.0 && sin_elevation_max <= 1.0, "sin_elevation_max",
          "must lie in (0, 1]");
  require(trials >= 1, "trials", "must be at least 1");
  require(!methods.empty(), "methods", "must list at least one method");
  (void)method_list();
  require(!tx_power_dbm.empty(), "tx_power_dbm", "must list at least one power");
  require(!n_measurements.empty(), "n_measurements", "must list at least one value");
  require(n_coherence >= 1, "n_coherence", "must be at least 1");
  for (std::size_t n : n_measurements) {
    require(n >= 1, "n_measurements", "values must be at least 1");
    require(n <= n_coherence, "n_measurements", "values must not exceed n_coherence");
  }
  require(type1_n_a >= 1 && uav_nx % type1_n_a == 0 && uav_ny % type1_n_a == 0, "type1_n_a",
          "must divide uav_nx and uav_ny");
  require(type2_n_a >= 1 && uav_nx % type2_n_a == 0 && uav_ny % type2_n_a == 0, "type2_n_a",
          "must divide uav_nx and uav_ny");
  require(type1_w >= 0.0, "type1_w", "must be non-negative");
  require(type2_w >= 0.0, "type2_w", "must be non-negative");
  require(estimator_z_psi == 0 || estimator_z_psi >= 2, "estimator_z_psi", "must be 0 or >= 2");
  require(estimator_z_omega == 0 || estimator_z_omega >= 2, "estimator_z_omega",
          "must be 0 or >= 2");
  require(estimator_n_pk >= 1, "estimator_n_pk", "must be at least 1");
  require(estimator_step >= 0.0, "estimator_step", "must be non-negative");
  require(estimator_epsilon > 0.0, "estimator_epsilon", "must be positive");
  require(threads >= 1, "threads", "must be at least 1");
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");

  ScenarioConfig cfg;
  std::set<std::string> known;
  for_each_field(cfg, [&](const char* key, auto& field) {
    known.insert(key);
    if (auto it = j.find(key); it != j.end()) read_value(key, *it, field);
  });
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(it.key(), "unknown config key");
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ScenarioConfig& cfg) {
  json j = json::object();
  for_each_field(cfg, [&](const char* key, const auto& field) { j[key] = field; });
  // nlohmann sorts object keys; that is fine for a documentation dump.
  return j.dump(2);
}

}  // namespace uavmm
