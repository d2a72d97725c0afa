#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace starkspec {

inline constexpr double kDefaultT2StarUs = 30.0;

// Target-shift grid of one spectroscopy sweep. Shifts are the *qubit* shifts
// omega_j; the scan converts each to a tone amplitude on the matching
// detuning branch (negative shifts from the tone above the qubit and vice
// versa).
struct ScanGrid {
  std::vector<double> shifts_mhz;
  double tau_us = 50.0;
  int shots = 1000;
  double detuning_abs_mhz = 50.0;

  // 501 points per direction sharing the zero point: 2*points - 1 entries
  // spanning [-span, +span].
  static ScanGrid symmetric(double span_mhz, int points_per_direction = 501,
                            double tau_us = 50.0, int shots = 1000);

  // Uniform spacing of the grid; throws if the grid is not uniform.
  double spacing_mhz() const;

  void validate() const;
};

// NaN marks a missing cell throughout; every consumer skips NaNs explicitly.
struct SpectroscopyMap {
  std::string qubit_id;
  ScanGrid grid;
  std::vector<double> times_hr;
  std::vector<std::vector<double>> p1;  // [slice][shift]

  void validate() const;
};

struct T1Point {
  double time_hr = 0.0;
  double t1_us = 0.0;
  double stderr_us = 0.0;
};

struct T1TimeSeries {
  std::string qubit_id;
  std::vector<T1Point> entries;

  std::vector<double> values() const;
};

// Survival probability exp(-Gamma(shift) * tau) with the bath frozen.
double survival_probability(const QubitModel& qubit, const BathState& bath,
                            double shift_mhz, double tau_us);

// One P1 sample: Binomial(shots, survival)/shots.
double measure_p1(const QubitModel& qubit, const BathState& bath,
                  double shift_mhz, double tau_us, int shots, RngStream& rng);

// One scan row; the bath is held fixed for the whole row.
std::vector<double> spectroscopy_scan(const QubitModel& qubit,
                                      const BathState& bath,
                                      const ScanGrid& grid, RngStream& rng);

// Shot-noise-free row, exp(-Gamma(omega_j) tau) pointwise.
std::vector<double> spectroscopy_scan_exact(const QubitModel& qubit,
                                            const BathState& bath,
                                            const ScanGrid& grid);

struct RamseyResult {
  double shift_mhz = 0.0;
  double stderr_mhz = 0.0;
};

// Stark-shift calibration from two quadrature Ramsey fringes
// (X_pi/2 and Y_pi/2 starts) with binomial shot noise, fitted by phase
// regression of the analytic signal. Throws Error(fit_failure) when the
// fringe contrast is below three times the shot noise.
RamseyResult ramsey_calibrate(const QubitModel& qubit, const StarkTone& tone,
                              const std::vector<double>& delays_us, int shots,
                              RngStream& rng,
                              double t2_star_us = kDefaultT2StarUs);

struct T1MeasureConfig {
  int n_delays = 41;
  double min_delay_us = 1.0;
  double max_delay_us = 500.0;
  int shots = 300;
};

std::vector<double> log_spaced_delays(const T1MeasureConfig& cfg);

// Full T1 measurement at zero Stark shift: P1 at log-spaced delays, free
// amplitude exponential fit.
T1Point measure_t1(const QubitModel& qubit, const BathState& bath,
                   double time_hr, const T1MeasureConfig& cfg, RngStream& rng);

struct Schedule {
  int t1_days = 0;               // one full T1 measurement every 24 h
  double scan_interval_hr = 0.0;
  int scan_count = 0;

  void validate() const;
};

struct CampaignResult {
  std::vector<T1TimeSeries> t1_series;
  std::vector<SpectroscopyMap> maps;
};

// Interleaves bath evolution, daily T1 measurements and spectroscopy scans on
// a shared clock. Each qubit owns a child stream of the master seed, so
// results are identical for any thread count. Failed T1 fits are skipped;
// failed scan cells are recorded as NaN.
CampaignResult run_campaign(const std::vector<QubitModel>& device,
                            const Schedule& schedule, const ScanGrid& grid,
                            const T1MeasureConfig& t1_cfg,
                            std::uint64_t master_seed, int threads = 1);

}  // namespace starkspec
