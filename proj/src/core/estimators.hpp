#pragma once

#include <vector>

#include "core/protocol.hpp"

namespace starkspec {

// Saturated cells (P1 exactly 0 or 1 from shot noise) are excluded by
// default; clip mode maps them to [1/(2 shots), 1 - 1/(2 shots)] instead.
enum class ClipPolicy { exclude, clip };

struct EstimatorConfig {
  double delta_omega_mhz = 5.0;  // half-width of the frequency window
  double chi_mhz = 1.0;          // ensemble sampling spacing
  int n_slices = 1;              // time slices averaged
  double tau_us = 50.0;
  ClipPolicy clip = ClipPolicy::exclude;

  void validate() const;

  // S = 2 floor(delta_omega / chi) + 1 ensemble samples.
  int sample_count() const;
};

struct EstimateResult {
  double value = 0.0;       // us for T1 estimators, probability for P1 ones
  double sample_std = 0.0;  // spread of the included cells
  int n_used = 0;
};

// T1 from a fixed-delay survival probability: -tau / ln(p1). Throws
// Error(domain) outside (0, 1).
double p1_to_t1(double p1, double tau_us);

// Mean over time of P1(omega_q, tau, T_i); NaN entries skipped.
EstimateResult mean_p1_over_time(const std::vector<double>& p1_series);

// Mean over time of the T1 record.
EstimateResult mean_t1_over_time(const T1TimeSeries& series);

// Equal-weight average of P1 over all cells with |omega_j| <= delta_omega in
// the first n_slices slices.
EstimateResult mean_p1_freq_time(const SpectroscopyMap& map,
                                 const EstimatorConfig& cfg);

// Same window, but each cell converted to T1 first (convert-then-average).
EstimateResult mean_t1_freq_time(const SpectroscopyMap& map,
                                 const EstimatorConfig& cfg);

// S-point ensemble mean of T1 at frequencies j*chi - delta_omega for one scan
// row, each snapped to the nearest grid cell within chi/2.
EstimateResult ensemble_estimator(const ScanGrid& grid,
                                  const std::vector<double>& row_p1,
                                  const EstimatorConfig& cfg);

// Cumulative means: element k is the average of the first k+1 entries.
std::vector<double> moving_average(const std::vector<double>& series,
                                   int upto_n);

}  // namespace starkspec
