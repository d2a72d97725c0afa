#include "core/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "core/errors.hpp"
#include "core/fit.hpp"

namespace starkspec {

ScanGrid ScanGrid::symmetric(double span_mhz, int points_per_direction,
                             double tau_us, int shots) {
  if (!(span_mhz > 0.0) || points_per_direction < 2)
    throw Error(ErrorCode::invalid_argument,
                "ScanGrid::symmetric: span must be > 0 and points >= 2");
  ScanGrid grid;
  grid.tau_us = tau_us;
  grid.shots = shots;
  const int steps = points_per_direction - 1;
  grid.shifts_mhz.reserve(2 * points_per_direction - 1);
  for (int i = -steps; i <= steps; ++i)
    grid.shifts_mhz.push_back(span_mhz * static_cast<double>(i) /
                              static_cast<double>(steps));
  grid.validate();
  return grid;
}

double ScanGrid::spacing_mhz() const {
  if (shifts_mhz.size() < 2)
    throw Error(ErrorCode::invalid_argument, "ScanGrid: no spacing for < 2 points");
  const double d = shifts_mhz[1] - shifts_mhz[0];
  for (std::size_t i = 1; i + 1 < shifts_mhz.size(); ++i) {
    const double di = shifts_mhz[i + 1] - shifts_mhz[i];
    if (std::abs(di - d) > 1e-9 * std::max(1.0, std::abs(d)))
      throw Error(ErrorCode::invalid_argument, "ScanGrid: grid is not uniform");
  }
  return d;
}

void ScanGrid::validate() const {
  if (shifts_mhz.empty())
    throw Error(ErrorCode::invalid_argument, "ScanGrid: empty shift list");
  if (!(tau_us > 0.0))
    throw Error(ErrorCode::invalid_argument, "ScanGrid: tau_us must be > 0");
  if (shots < 1)
    throw Error(ErrorCode::invalid_argument, "ScanGrid: shots must be >= 1");
  int zeros = 0;
  for (double s : shifts_mhz) zeros += (s == 0.0);
  if (zeros > 1)
    throw Error(ErrorCode::invalid_argument,
                "ScanGrid: zero shift may appear at most once");
  // Strictly monotone within each sign branch.
  double prev_neg = -1e300, prev_pos = -1e300;
  for (double s : shifts_mhz) {
    double& prev = (s < 0.0) ? prev_neg : prev_pos;
    if (s != 0.0 && s <= prev)
      throw Error(ErrorCode::invalid_argument,
                  "ScanGrid: shifts must be strictly increasing per branch");
    if (s != 0.0) prev = s;
  }
}

void SpectroscopyMap::validate() const {
  grid.validate();
  if (p1.size() != times_hr.size())
    throw Error(ErrorCode::invalid_argument,
                "SpectroscopyMap: slice count does not match times");
  for (const auto& row : p1) {
    if (row.size() != grid.shifts_mhz.size())
      throw Error(ErrorCode::invalid_argument,
                  "SpectroscopyMap: row length does not match grid");
    for (double v : row)
      if (!std::isnan(v) && (v < 0.0 || v > 1.0))
        throw Error(ErrorCode::invalid_argument,
                    "SpectroscopyMap: P1 outside [0, 1]");
  }
  for (std::size_t i = 1; i < times_hr.size(); ++i)
    if (times_hr[i] <= times_hr[i - 1])
      throw Error(ErrorCode::invalid_argument,
                  "SpectroscopyMap: times must be strictly increasing");
}

std::vector<double> T1TimeSeries::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.t1_us);
  return v;
}

double survival_probability(const QubitModel& qubit, const BathState& bath,
                            double shift_mhz, double tau_us) {
  return std::exp(-relaxation_rate(qubit, bath, shift_mhz) * tau_us);
}

double measure_p1(const QubitModel& qubit, const BathState& bath,
                  double shift_mhz, double tau_us, int shots, RngStream& rng) {
  if (shots < 1)
    throw Error(ErrorCode::invalid_argument, "measure_p1: shots must be >= 1");
  const double p = survival_probability(qubit, bath, shift_mhz, tau_us);
  return static_cast<double>(rng.binomial(shots, p)) /
         static_cast<double>(shots);
}

std::vector<double> spectroscopy_scan(const QubitModel& qubit,
                                      const BathState& bath,
                                      const ScanGrid& grid, RngStream& rng) {
  grid.validate();
  std::vector<double> row;
  row.reserve(grid.shifts_mhz.size());
  for (double shift : grid.shifts_mhz) {
    // The tone sits above the qubit for negative shifts and below for
    // positive ones; the amplitude conversion raises sign_infeasible with the
    // offending frequency if a branch cannot produce the target.
    const double detuning =
        (shift <= 0.0) ? -grid.detuning_abs_mhz : grid.detuning_abs_mhz;
    try {
      (void)amplitude_for_shift(shift, qubit.delta_q_mhz, detuning);
    } catch (const Error& e) {
      throw Error(e.code(), "spectroscopy_scan at shift " +
                                std::to_string(shift) + " MHz: " + e.what());
    }
    row.push_back(measure_p1(qubit, bath, shift, grid.tau_us, grid.shots, rng));
  }
  return row;
}

std::vector<double> spectroscopy_scan_exact(const QubitModel& qubit,
                                            const BathState& bath,
                                            const ScanGrid& grid) {
  std::vector<double> row;
  row.reserve(grid.shifts_mhz.size());
  for (double shift : grid.shifts_mhz)
    row.push_back(survival_probability(qubit, bath, shift, grid.tau_us));
  return row;
}

RamseyResult ramsey_calibrate(const QubitModel& qubit, const StarkTone& tone,
                              const std::vector<double>& delays_us, int shots,
                              RngStream& rng, double t2_star_us) {
  if (delays_us.size() < 8)
    throw Error(ErrorCode::invalid_argument,
                "ramsey_calibrate: need >= 8 delay points");
  const double true_shift =
      stark_shift(qubit.delta_q_mhz, tone.omega_s_mhz, tone.delta_qs_mhz);

  const int n = static_cast<int>(delays_us.size());
  std::vector<double> re(n), im(n);
  double mean_amp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = delays_us[i];
    const double envelope = std::exp(-t / t2_star_us);
    const double phase = 2.0 * M_PI * true_shift * t;
    const double px = 0.5 * (1.0 + envelope * std::cos(phase));
    const double py = 0.5 * (1.0 + envelope * std::sin(phase));
    const double sx = static_cast<double>(rng.binomial(shots, px)) / shots;
    const double sy = static_cast<double>(rng.binomial(shots, py)) / shots;
    re[i] = 2.0 * sx - 1.0;
    im[i] = 2.0 * sy - 1.0;
    mean_amp += std::hypot(re[i], im[i]);
  }
  mean_amp /= n;

  // Per-quadrature shot noise of 2*p_hat - 1 is at most 1/sqrt(shots).
  const double shot_noise = 1.0 / std::sqrt(static_cast<double>(shots));
  if (mean_amp < 3.0 * shot_noise)
    throw Error(ErrorCode::fit_failure,
                "ramsey_calibrate: fringe contrast " + std::to_string(mean_amp) +
                    " below 3x shot noise " + std::to_string(3.0 * shot_noise));

  const PhaseRegression fit = fit_phase_regression(delays_us, re, im);
  return RamseyResult{fit.freq_mhz, fit.stderr_mhz};
}

std::vector<double> log_spaced_delays(const T1MeasureConfig& cfg) {
  if (cfg.n_delays < 3 || !(cfg.min_delay_us > 0.0) ||
      !(cfg.max_delay_us > cfg.min_delay_us))
    throw Error(ErrorCode::invalid_argument,
                "T1MeasureConfig: need n >= 3 and 0 < min < max");
  std::vector<double> t(cfg.n_delays);
  const double lo = std::log(cfg.min_delay_us);
  const double hi = std::log(cfg.max_delay_us);
  for (int i = 0; i < cfg.n_delays; ++i)
    t[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(cfg.n_delays - 1));
  return t;
}

T1Point measure_t1(const QubitModel& qubit, const BathState& bath,
                   double time_hr, const T1MeasureConfig& cfg, RngStream& rng) {
  const std::vector<double> delays = log_spaced_delays(cfg);
  std::vector<double> p1(delays.size());
  for (std::size_t i = 0; i < delays.size(); ++i)
    p1[i] = measure_p1(qubit, bath, 0.0, delays[i], cfg.shots, rng);

  const double noise_floor =
      2.0 * 0.5 / std::sqrt(static_cast<double>(cfg.shots));
  const ExpDecayFit fit = fit_exponential_decay(delays, p1, noise_floor);
  return T1Point{time_hr, fit.t1_us, fit.t1_stderr_us};
}

void Schedule::validate() const {
  if (t1_days < 0 || scan_count < 0)
    throw Error(ErrorCode::invalid_argument, "Schedule: counts must be >= 0");
  if (scan_count > 0 && !(scan_interval_hr > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "Schedule: scan_interval_hr must be > 0 when scans are scheduled");
}

namespace {

struct Event {
  double time_hr;
  enum class Kind { t1, scan } kind;
};

std::vector<Event> build_timeline(const Schedule& schedule) {
  std::vector<Event> events;
  for (int d = 0; d < schedule.t1_days; ++d)
    events.push_back({24.0 * static_cast<double>(d), Event::Kind::t1});
  for (int s = 0; s < schedule.scan_count; ++s)
    events.push_back(
        {schedule.scan_interval_hr * static_cast<double>(s), Event::Kind::scan});
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) {
                     if (a.time_hr != b.time_hr) return a.time_hr < b.time_hr;
                     // T1 before scan at equal times.
                     return a.kind == Event::Kind::t1 && b.kind == Event::Kind::scan;
                   });
  return events;
}

void run_qubit(const QubitModel& qubit, const std::vector<Event>& events,
               const ScanGrid& grid, const T1MeasureConfig& t1_cfg,
               RngStream stream, T1TimeSeries& t1_out, SpectroscopyMap& map_out) {
  t1_out.qubit_id = qubit.id;
  map_out.qubit_id = qubit.id;
  map_out.grid = grid;

  BathState bath = initial_bath_state(qubit, stream);
  for (const Event& ev : events) {
    if (ev.time_hr > bath.time_hr)
      bath = evolve_bath(qubit, bath, ev.time_hr - bath.time_hr, stream);
    if (ev.kind == Event::Kind::t1) {
      try {
        t1_out.entries.push_back(measure_t1(qubit, bath, ev.time_hr, t1_cfg, stream));
      } catch (const Error&) {
        // Failed fits are recorded as missing, never interpolated.
      }
    } else {
      map_out.times_hr.push_back(ev.time_hr);
      try {
        map_out.p1.push_back(spectroscopy_scan(qubit, bath, grid, stream));
      } catch (const Error&) {
        map_out.p1.emplace_back(grid.shifts_mhz.size(),
                                std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
}

}  // namespace

CampaignResult run_campaign(const std::vector<QubitModel>& device,
                            const Schedule& schedule, const ScanGrid& grid,
                            const T1MeasureConfig& t1_cfg,
                            std::uint64_t master_seed, int threads) {
  schedule.validate();
  grid.validate();
  for (const QubitModel& q : device) q.validate();

  const std::vector<Event> events = build_timeline(schedule);
  const RngStream master(master_seed);

  CampaignResult result;
  result.t1_series.resize(device.size());
  result.maps.resize(device.size());

  auto work = [&](std::size_t q) {
    run_qubit(device[q], events, grid, t1_cfg, master.child(q),
              result.t1_series[q], result.maps[q]);
  };

  if (threads <= 1 || device.size() <= 1) {
    for (std::size_t q = 0; q < device.size(); ++q) work(q);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const int n_threads =
        std::min<std::size_t>(threads, device.size());
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t q = next.fetch_add(1); q < device.size();
             q = next.fetch_add(1))
          work(q);
      });
    }
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace starkspec
