#include "core/rconv.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/stats.hpp"

namespace starkspec {

void RSimConfig::validate() const {
  if (n_qubits < 2 || n_devices < 1 || n_max < 1)
    throw Error(ErrorCode::invalid_argument,
                "RSimConfig: counts must be positive (n_qubits >= 2)");
  if (!(alpha > 0.0) || alpha >= 1.0 || !(beta_std > 0.0) || beta_std >= 1.0)
    throw Error(ErrorCode::invalid_argument,
                "RSimConfig: alpha and beta_std must be in (0, 1)");
  if (!(t1_mean_us > 0.0))
    throw Error(ErrorCode::invalid_argument, "RSimConfig: t1_mean must be > 0");
}

RConvergence simulate_r_convergence(const RSimConfig& cfg, RngStream& rng) {
  cfg.validate();
  RConvergence out;
  out.r_mean.assign(cfg.n_max, 0.0);
  out.r_std.assign(cfg.n_max, 0.0);
  out.analytic_mean.assign(cfg.n_max, 0.0);

  std::vector<double> truth(cfg.n_qubits), cumsum(cfg.n_qubits),
      estimate(cfg.n_qubits), betas(cfg.n_qubits);
  std::vector<std::vector<double>> r_samples(cfg.n_max);

  for (int dev = 0; dev < cfg.n_devices; ++dev) {
    RngStream dev_rng = rng.child(static_cast<std::uint64_t>(dev));
    for (int k = 0; k < cfg.n_qubits; ++k) {
      truth[k] =
          dev_rng.normal(cfg.t1_mean_us, cfg.beta_std * cfg.t1_mean_us);
      betas[k] = (truth[k] - cfg.t1_mean_us) / cfg.t1_mean_us;
      cumsum[k] = 0.0;
    }
    for (int meas = 1; meas <= cfg.n_max; ++meas) {
      for (int k = 0; k < cfg.n_qubits; ++k) {
        cumsum[k] += dev_rng.normal(truth[k], cfg.alpha * std::abs(truth[k]));
        estimate[k] = cumsum[k] / static_cast<double>(meas);
      }
      r_samples[meas - 1].push_back(pearson_r(estimate, truth).r);
      out.analytic_mean[meas - 1] +=
          analytic_r(betas, cfg.alpha, static_cast<double>(meas));
    }
  }

  for (int m = 0; m < cfg.n_max; ++m) {
    double mean = 0.0;
    for (double v : r_samples[m]) mean += v;
    mean /= static_cast<double>(cfg.n_devices);
    double ss = 0.0;
    for (double v : r_samples[m]) ss += (v - mean) * (v - mean);
    out.r_mean[m] = mean;
    out.r_std[m] = cfg.n_devices > 1
                       ? std::sqrt(ss / static_cast<double>(cfg.n_devices - 1))
                       : 0.0;
    out.analytic_mean[m] /= static_cast<double>(cfg.n_devices);
  }
  return out;
}

double analytic_r(const std::vector<double>& betas, double alpha,
                  double n_meas) {
  if (betas.empty())
    throw Error(ErrorCode::invalid_argument, "analytic_r: empty beta vector");
  double b2 = 0.0, b1 = 0.0;
  for (double b : betas) {
    b2 += b * b;
    b1 += b;
  }
  if (b2 == 0.0)
    throw Error(ErrorCode::domain, "analytic_r: all betas are zero");
  const double c = alpha / std::sqrt(n_meas);
  double shifted2 = 0.0;
  for (double b : betas) shifted2 += (b + c) * (b + c);
  return (b2 + c * b1) / std::sqrt(b2 * shifted2);
}

RSurface r_vs_window(const std::vector<SpectroscopyMap>& maps,
                     const std::vector<double>& long_means_us,
                     const std::vector<double>& delta_omega_grid_mhz,
                     const std::vector<int>& n_grid, double tau_us) {
  if (maps.size() != long_means_us.size())
    throw Error(ErrorCode::invalid_argument,
                "r_vs_window: need one long mean per map");
  if (maps.size() < 2)
    throw Error(ErrorCode::invalid_argument,
                "r_vs_window: R needs at least 2 qubits");

  RSurface out;
  out.delta_omegas_mhz = delta_omega_grid_mhz;
  out.n_slices = n_grid;
  out.r.assign(delta_omega_grid_mhz.size(),
               std::vector<double>(n_grid.size(), 0.0));

  for (std::size_t i = 0; i < delta_omega_grid_mhz.size(); ++i) {
    for (std::size_t j = 0; j < n_grid.size(); ++j) {
      EstimatorConfig cfg;
      cfg.delta_omega_mhz = delta_omega_grid_mhz[i];
      cfg.n_slices = n_grid[j];
      cfg.tau_us = tau_us;
      std::vector<double> estimates;
      estimates.reserve(maps.size());
      bool ok = true;
      for (const SpectroscopyMap& map : maps) {
        try {
          estimates.push_back(mean_t1_freq_time(map, cfg).value);
        } catch (const Error&) {
          ok = false;
          break;
        }
      }
      out.r[i][j] = ok ? pearson_r(estimates, long_means_us).r
                       : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

}  // namespace starkspec
