#include "core/estimators.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace starkspec {

namespace {

EstimateResult summarize(const std::vector<double>& values) {
  if (values.empty())
    throw Error(ErrorCode::domain, "estimator: no usable cells");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  EstimateResult out;
  out.value = mean;
  out.n_used = static_cast<int>(values.size());
  out.sample_std =
      values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                        : 0.0;
  return out;
}

double clip_p1(double p1, int shots) {
  const double lo = 1.0 / (2.0 * static_cast<double>(shots));
  return std::min(std::max(p1, lo), 1.0 - lo);
}

// Collects window cells as P1 (convert=false) or T1 (convert=true).
std::vector<double> window_cells(const SpectroscopyMap& map,
                                 const EstimatorConfig& cfg, bool convert) {
  map.validate();
  cfg.validate();
  if (cfg.n_slices > static_cast<int>(map.p1.size()))
    throw Error(ErrorCode::invalid_argument,
                "estimator: n_slices exceeds available map slices");
  double span = 0.0;
  for (double s : map.grid.shifts_mhz) span = std::max(span, std::abs(s));
  if (cfg.delta_omega_mhz > span + 1e-12)
    throw Error(ErrorCode::invalid_argument,
                "estimator: delta_omega exceeds the scanned span");

  std::vector<double> cells;
  for (int i = 0; i < cfg.n_slices; ++i) {
    for (std::size_t j = 0; j < map.grid.shifts_mhz.size(); ++j) {
      if (std::abs(map.grid.shifts_mhz[j]) > cfg.delta_omega_mhz + 1e-12)
        continue;
      double v = map.p1[i][j];
      if (std::isnan(v)) continue;
      if (convert) {
        if (v <= 0.0 || v >= 1.0) {
          if (cfg.clip == ClipPolicy::exclude) continue;
          v = clip_p1(v, map.grid.shots);
        }
        cells.push_back(p1_to_t1(v, cfg.tau_us));
      } else {
        cells.push_back(v);
      }
    }
  }
  return cells;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(chi_mhz > 0.0))
    throw Error(ErrorCode::invalid_argument, "EstimatorConfig: chi must be > 0");
  if (delta_omega_mhz < 0.0)
    throw Error(ErrorCode::invalid_argument,
                "EstimatorConfig: delta_omega must be >= 0");
  // chi <= 2*delta_omega whenever the window is non-degenerate; delta_omega=0
  // is the documented single-cell limit with S = 1.
  if (delta_omega_mhz > 0.0 && chi_mhz > 2.0 * delta_omega_mhz + 1e-12)
    throw Error(ErrorCode::invalid_argument,
                "EstimatorConfig: chi must be <= 2*delta_omega");
  if (n_slices < 1)
    throw Error(ErrorCode::invalid_argument,
                "EstimatorConfig: n_slices must be >= 1");
  if (!(tau_us > 0.0))
    throw Error(ErrorCode::invalid_argument, "EstimatorConfig: tau must be > 0");
}

int EstimatorConfig::sample_count() const {
  return 2 * static_cast<int>(std::floor(delta_omega_mhz / chi_mhz)) + 1;
}

double p1_to_t1(double p1, double tau_us) {
  if (!(p1 > 0.0) || !(p1 < 1.0))
    throw Error(ErrorCode::domain,
                "p1_to_t1: p1 = " + std::to_string(p1) +
                    " outside (0, 1); cell is shot-noise saturated");
  return -tau_us / std::log(p1);
}

EstimateResult mean_p1_over_time(const std::vector<double>& p1_series) {
  std::vector<double> vals;
  vals.reserve(p1_series.size());
  for (double v : p1_series)
    if (!std::isnan(v)) vals.push_back(v);
  return summarize(vals);
}

EstimateResult mean_t1_over_time(const T1TimeSeries& series) {
  std::vector<double> vals;
  vals.reserve(series.entries.size());
  for (const T1Point& e : series.entries)
    if (!std::isnan(e.t1_us)) vals.push_back(e.t1_us);
  return summarize(vals);
}

EstimateResult mean_p1_freq_time(const SpectroscopyMap& map,
                                 const EstimatorConfig& cfg) {
  return summarize(window_cells(map, cfg, /*convert=*/false));
}

EstimateResult mean_t1_freq_time(const SpectroscopyMap& map,
                                 const EstimatorConfig& cfg) {
  return summarize(window_cells(map, cfg, /*convert=*/true));
}

EstimateResult ensemble_estimator(const ScanGrid& grid,
                                  const std::vector<double>& row_p1,
                                  const EstimatorConfig& cfg) {
  cfg.validate();
  if (row_p1.size() != grid.shifts_mhz.size())
    throw Error(ErrorCode::invalid_argument,
                "ensemble_estimator: row length does not match grid");
  const int s_count = cfg.sample_count();
  std::vector<double> t1s;
  t1s.reserve(s_count);
  for (int j = 0; j < s_count; ++j) {
    const double want =
        static_cast<double>(j) * cfg.chi_mhz - cfg.delta_omega_mhz +
        // Center the comb when delta_omega is not a multiple of chi.
        (cfg.delta_omega_mhz -
         std::floor(cfg.delta_omega_mhz / cfg.chi_mhz) * cfg.chi_mhz);
    int best = -1;
    double best_dist = cfg.chi_mhz / 2.0;
    for (std::size_t g = 0; g < grid.shifts_mhz.size(); ++g) {
      const double dist = std::abs(grid.shifts_mhz[g] - want);
      if (dist <= best_dist) {
        best_dist = dist;
        best = static_cast<int>(g);
      }
    }
    if (best < 0)
      throw Error(ErrorCode::invalid_argument,
                  "ensemble_estimator: no grid point within chi/2 of " +
                      std::to_string(want) + " MHz");
    const double v = row_p1[best];
    if (std::isnan(v)) continue;
    if (v <= 0.0 || v >= 1.0) {
      if (cfg.clip == ClipPolicy::exclude) continue;
      t1s.push_back(p1_to_t1(clip_p1(v, grid.shots), cfg.tau_us));
      continue;
    }
    t1s.push_back(p1_to_t1(v, cfg.tau_us));
  }
  return summarize(t1s);
}

std::vector<double> moving_average(const std::vector<double>& series,
                                   int upto_n) {
  if (upto_n < 0 || upto_n > static_cast<int>(series.size()))
    throw Error(ErrorCode::invalid_argument,
                "moving_average: upto_n out of range");
  std::vector<double> out(upto_n);
  double sum = 0.0;
  for (int k = 0; k < upto_n; ++k) {
    sum += series[k];
    out[k] = sum / static_cast<double>(k + 1);
  }
  return out;
}

}  // namespace starkspec
