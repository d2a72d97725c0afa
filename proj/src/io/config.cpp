#include "io/config.hpp"

#include <cmath>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace starkspec {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse, "config: " + path + ": " + what);
}

double get_number(const json& j, const std::string& path, const char* key,
                  bool required, double fallback = 0.0) {
  if (!j.contains(key)) {
    if (required) fail(path + "." + key, "missing required field");
    return fallback;
  }
  if (!j[key].is_number()) fail(path + "." + key, "must be a number");
  return j[key].get<double>();
}

std::pair<double, double> get_range(const json& j, const std::string& path,
                                    const char* key, double lo, double hi) {
  if (!j.contains(key)) return {lo, hi};
  const json& r = j[key];
  if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
    fail(path + "." + key, "must be a [low, high] pair");
  const double a = r[0].get<double>();
  const double b = r[1].get<double>();
  if (!(a <= b)) fail(path + "." + key, "low must be <= high");
  return {a, b};
}

int poisson_draw(double mean, RngStream& rng) {
  // Knuth's product method; means here are O(20).
  const double limit = std::exp(-mean);
  int k = 0;
  double prod = rng.uniform();
  while (prod > limit) {
    ++k;
    prod *= rng.uniform();
  }
  return k;
}

std::vector<TlsDefect> draw_random_bath(const json& spec,
                                        const std::string& path,
                                        RngStream& rng) {
  const double count_mean = get_number(spec, path, "count_mean", false, 20.0);
  const double span = get_number(spec, path, "span_mhz", false, 30.0);
  const auto g_range = get_range(spec, path, "g_mhz", 0.03, 0.12);
  const auto hwhm_range = get_range(spec, path, "hwhm_mhz", 0.2, 1.2);
  const auto theta_range = get_range(spec, path, "theta_per_hr", 0.02, 0.08);
  const auto std_range = get_range(spec, path, "stationary_std_mhz", 1.5, 3.0);
  if (!(count_mean >= 0.0)) fail(path + ".count_mean", "must be >= 0");
  if (!(span > 0.0)) fail(path + ".span_mhz", "must be > 0");

  auto uniform_in = [&](const std::pair<double, double>& r) {
    return r.first + (r.second - r.first) * rng.uniform();
  };

  const int count = poisson_draw(count_mean, rng);
  std::vector<TlsDefect> bath(count);
  for (TlsDefect& d : bath) {
    d.mu_mhz = -span + 2.0 * span * rng.uniform();
    d.g_mhz = uniform_in(g_range);
    d.hwhm_mhz = uniform_in(hwhm_range);
    d.theta_per_hr = uniform_in(theta_range);
    const double stat_std = uniform_in(std_range);
    d.sigma_mhz_sqrt_hr = stat_std * std::sqrt(2.0 * d.theta_per_hr);
  }
  return bath;
}

TlsDefect parse_defect(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "must be an object");
  TlsDefect d;
  d.mu_mhz = get_number(j, path, "mu_mhz", true);
  d.g_mhz = get_number(j, path, "g_mhz", true);
  d.hwhm_mhz = get_number(j, path, "hwhm_mhz", true);
  d.theta_per_hr = get_number(j, path, "theta_per_hr", false, 0.0);
  d.sigma_mhz_sqrt_hr = get_number(j, path, "sigma_mhz_sqrt_hr", false, 0.0);
  return d;
}

}  // namespace

CampaignConfig parse_campaign_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "top level must be an object");

  CampaignConfig cfg;

  if (!root.contains("master_seed")) fail("$.master_seed", "missing required field");
  if (!root["master_seed"].is_number_unsigned() &&
      !root["master_seed"].is_number_integer())
    fail("$.master_seed", "must be an integer");
  cfg.master_seed = root["master_seed"].get<std::uint64_t>();

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) fail("$.output_dir", "must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("threads")) {
    if (!root["threads"].is_number_integer()) fail("$.threads", "must be an integer");
    cfg.threads = root["threads"].get<int>();
    if (cfg.threads < 1) fail("$.threads", "must be >= 1");
  }

  if (!root.contains("device") || !root["device"].is_array() ||
      root["device"].empty())
    fail("$.device", "must be a non-empty array of qubit configs");

  const RngStream master(cfg.master_seed);
  int q_index = 0;
  for (const json& jq : root["device"]) {
    const std::string path = "$.device[" + std::to_string(q_index) + "]";
    if (!jq.is_object()) fail(path, "must be an object");
    QubitModel q;
    q.id = jq.contains("qubit_id") && jq["qubit_id"].is_string()
               ? jq["qubit_id"].get<std::string>()
               : "Q" + std::to_string(q_index);
    q.omega_q_ghz = get_number(jq, path, "omega_q_ghz", false, 5.0);
    q.delta_q_mhz = get_number(jq, path, "delta_q_mhz", false, -340.0);
    q.gamma0_per_us = get_number(jq, path, "gamma0_per_us", false, 0.01);

    if (jq.contains("bath") && jq.contains("bath_random"))
      fail(path, "give either bath or bath_random, not both");
    if (jq.contains("bath")) {
      if (!jq["bath"].is_array()) fail(path + ".bath", "must be an array");
      int d_index = 0;
      for (const json& jd : jq["bath"])
        q.bath.push_back(
            parse_defect(jd, path + ".bath[" + std::to_string(d_index++) + "]"));
    } else if (jq.contains("bath_random")) {
      if (!jq["bath_random"].is_object())
        fail(path + ".bath_random", "must be an object");
      // Separate child-id namespace from the campaign's per-qubit streams.
      RngStream bath_rng =
          master.child(0x42415448ULL + static_cast<std::uint64_t>(q_index));
      q.bath = draw_random_bath(jq["bath_random"], path + ".bath_random", bath_rng);
    }
    try {
      q.validate();
    } catch (const Error& e) {
      fail(path, e.what());
    }
    cfg.device.push_back(std::move(q));
    ++q_index;
  }

  const json sched = root.value("schedule", json::object());
  cfg.schedule.t1_days =
      static_cast<int>(get_number(sched, "$.schedule", "t1_days", false, 0.0));
  cfg.schedule.scan_interval_hr =
      get_number(sched, "$.schedule", "scan_interval_hr", false, 3.5);
  cfg.schedule.scan_count = static_cast<int>(
      get_number(sched, "$.schedule", "scan_count", false, 0.0));
  try {
    cfg.schedule.validate();
  } catch (const Error& e) {
    fail("$.schedule", e.what());
  }

  const json scan = root.value("scan", json::object());
  const double span = get_number(scan, "$.scan", "span_mhz", false, 25.0);
  const int ppd = static_cast<int>(
      get_number(scan, "$.scan", "points_per_direction", false, 501.0));
  const double scan_tau = get_number(scan, "$.scan", "tau_us", false, 50.0);
  const int scan_shots =
      static_cast<int>(get_number(scan, "$.scan", "shots", false, 1000.0));
  try {
    cfg.grid = ScanGrid::symmetric(span, ppd, scan_tau, scan_shots);
    cfg.grid.detuning_abs_mhz =
        get_number(scan, "$.scan", "detuning_abs_mhz", false, 50.0);
  } catch (const Error& e) {
    fail("$.scan", e.what());
  }

  const json t1m = root.value("t1_measurement", json::object());
  cfg.t1_cfg.n_delays = static_cast<int>(
      get_number(t1m, "$.t1_measurement", "n_delays", false, 41.0));
  cfg.t1_cfg.min_delay_us =
      get_number(t1m, "$.t1_measurement", "min_delay_us", false, 1.0);
  cfg.t1_cfg.max_delay_us =
      get_number(t1m, "$.t1_measurement", "max_delay_us", false, 500.0);
  cfg.t1_cfg.shots =
      static_cast<int>(get_number(t1m, "$.t1_measurement", "shots", false, 300.0));

  const json est = root.value("estimator", json::object());
  cfg.estimator.delta_omega_mhz =
      get_number(est, "$.estimator", "delta_omega_mhz", false, 5.0);
  cfg.estimator.chi_mhz = get_number(est, "$.estimator", "chi_mhz", false, 1.0);
  cfg.estimator.n_slices =
      static_cast<int>(get_number(est, "$.estimator", "n_slices", false, 1.0));
  cfg.estimator.tau_us = get_number(est, "$.estimator", "tau_us", false, 50.0);
  try {
    cfg.estimator.validate();
  } catch (const Error& e) {
    fail("$.estimator", e.what());
  }

  return cfg;
}

}  // namespace starkspec
