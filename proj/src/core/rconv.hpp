#pragma once

#include <vector>

#include "core/estimators.hpp"
#include "core/protocol.hpp"
#include "core/rng.hpp"

namespace starkspec {

// Monte Carlo of Pearson-R convergence under uncorrelated T1 measurements:
// per device, true means ~ N(t1_mean, beta_std * t1_mean); each measurement
// ~ N(mean_k, alpha * mean_k); cumulative means correlated against the truth.
struct RSimConfig {
  int n_qubits = 10;
  double alpha = 0.2;      // measurement fluctuation fraction
  double beta_std = 0.1;   // device spread fraction
  int n_devices = 200;
  int n_max = 160;         // measurements per qubit
  double t1_mean_us = 100.0;

  void validate() const;
};

struct RConvergence {
  std::vector<double> r_mean;         // index N-1
  std::vector<double> r_std;          // device-ensemble spread
  std::vector<double> analytic_mean;  // closed form sampled over the same betas
};

RConvergence simulate_r_convergence(const RSimConfig& cfg, RngStream& rng);

// Closed-form expected R for one device defined by its beta vector:
//   (sum b^2 + a/sqrt(N) sum b) / sqrt(sum b^2 * sum (b + a/sqrt(N))^2)
double analytic_r(const std::vector<double>& betas, double alpha,
                  double n_meas);

// Pearson R between the windowed estimator and the per-qubit long-time means,
// swept over (delta_omega, n_slices).
struct RSurface {
  std::vector<double> delta_omegas_mhz;
  std::vector<int> n_slices;
  // r[i][j] for delta_omegas[i] x n_slices[j]; NaN when the estimator failed
  // for some qubit.
  std::vector<std::vector<double>> r;
};

RSurface r_vs_window(const std::vector<SpectroscopyMap>& maps,
                     const std::vector<double>& long_means_us,
                     const std::vector<double>& delta_omega_grid_mhz,
                     const std::vector<int>& n_grid, double tau_us);

}  // namespace starkspec
