#include "core/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/fit.hpp"

namespace starkspec {

void TrackConfig::validate() const {
  if (!(p_threshold > 0.0) || !(p_threshold < 1.0))
    throw Error(ErrorCode::invalid_argument,
                "TrackConfig: p_threshold must be in (0, 1)");
  if (min_prominence < 0.0)
    throw Error(ErrorCode::invalid_argument,
                "TrackConfig: min_prominence must be >= 0");
  if (!(cluster_gap_mhz > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "TrackConfig: cluster_gap_mhz must be > 0");
}

namespace {

// Height of the lower of the two ridges enclosing the minimum at i.
double dip_prominence(const std::vector<double>& p, int i) {
  double left_summit = p[i];
  for (int j = i - 1; j >= 0 && !std::isnan(p[j]); --j) {
    if (p[j] < p[i]) break;
    left_summit = std::max(left_summit, p[j]);
  }
  double right_summit = p[i];
  const int n = static_cast<int>(p.size());
  for (int j = i + 1; j < n && !std::isnan(p[j]); ++j) {
    if (p[j] < p[i]) break;
    right_summit = std::max(right_summit, p[j]);
  }
  return std::min(left_summit, right_summit) - p[i];
}

}  // namespace

std::vector<Feature> extract_minima(const ScanGrid& grid,
                                    const std::vector<double>& row_p1,
                                    const TrackConfig& cfg) {
  cfg.validate();
  if (row_p1.size() != grid.shifts_mhz.size())
    throw Error(ErrorCode::invalid_argument,
                "extract_minima: row length does not match grid");
  const int n = static_cast<int>(row_p1.size());
  if (n < 3)
    throw Error(ErrorCode::invalid_argument, "extract_minima: need >= 3 points");

  std::vector<Feature> features;
  for (int i = 1; i + 1 < n; ++i) {
    const double v = row_p1[i];
    if (std::isnan(v) || std::isnan(row_p1[i - 1]) || std::isnan(row_p1[i + 1]))
      continue;
    if (!(v < row_p1[i - 1] && v < row_p1[i + 1])) continue;
    if (!(v < cfg.p_threshold)) continue;  // strictly below
    if (dip_prominence(row_p1, i) < cfg.min_prominence) continue;
    features.push_back({grid.shifts_mhz[i], v});
  }
  std::sort(features.begin(), features.end(),
            [](const Feature& a, const Feature& b) {
              return a.omega_mhz < b.omega_mhz;
            });
  return features;
}

TrackSet accumulate_tracks(const SpectroscopyMap& map, const TrackConfig& cfg) {
  map.validate();
  if (map.p1.empty())
    throw Error(ErrorCode::invalid_argument,
                "accumulate_tracks: map has no slices");

  TrackSet out;
  std::vector<double> pooled;
  for (const auto& row : map.p1) {
    out.per_slice.push_back(extract_minima(map.grid, row, cfg));
    for (const Feature& f : out.per_slice.back())
      pooled.push_back(f.omega_mhz);
  }
  std::sort(pooled.begin(), pooled.end());

  for (double pos : pooled) {
    if (out.clusters.empty() ||
        pos - out.clusters.back().positions_mhz.back() > cfg.cluster_gap_mhz) {
      out.clusters.push_back({pos, pos, {pos}});
    } else {
      out.clusters.back().positions_mhz.push_back(pos);
      out.clusters.back().hi_mhz = pos;
    }
  }
  return out;
}

PositionHistogram histogram_positions(const std::vector<double>& positions_mhz,
                                      double lo_mhz, double hi_mhz,
                                      double bin_width_mhz) {
  if (!(hi_mhz > lo_mhz) || !(bin_width_mhz > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "histogram_positions: bad window or bin width");
  const int nbins = std::max(
      1, static_cast<int>(std::ceil((hi_mhz - lo_mhz) / bin_width_mhz)));
  PositionHistogram hist;
  hist.centers_mhz.resize(nbins);
  hist.counts.assign(nbins, 0.0);
  for (int b = 0; b < nbins; ++b)
    hist.centers_mhz[b] = lo_mhz + (static_cast<double>(b) + 0.5) * bin_width_mhz;
  for (double pos : positions_mhz) {
    if (pos < lo_mhz || pos >= hi_mhz) continue;
    const int b = std::min(
        nbins - 1, static_cast<int>((pos - lo_mhz) / bin_width_mhz));
    hist.counts[b] += 1.0;
  }
  return hist;
}

LinewidthFit fit_linewidth(const PositionHistogram& hist, double window_lo_mhz,
                           double window_hi_mhz, double duration_hr) {
  if (!(window_hi_mhz > window_lo_mhz))
    throw Error(ErrorCode::invalid_argument, "fit_linewidth: empty window");
  std::vector<double> centers, counts;
  int nonzero = 0;
  for (std::size_t i = 0; i < hist.centers_mhz.size(); ++i) {
    if (hist.centers_mhz[i] < window_lo_mhz ||
        hist.centers_mhz[i] > window_hi_mhz)
      continue;
    centers.push_back(hist.centers_mhz[i]);
    counts.push_back(hist.counts[i]);
    nonzero += (hist.counts[i] > 0.0);
  }
  if (nonzero < 5)
    throw Error(ErrorCode::invalid_argument,
                "fit_linewidth: need >= 5 nonzero bins in the window, have " +
                    std::to_string(nonzero));

  const GaussianCountsFit fit = fit_gaussian_counts(centers, counts);
  LinewidthFit out;
  out.mu_mhz = fit.center_mhz;
  out.sigma_mhz = fit.sigma_mhz;
  out.amplitude = fit.amplitude;
  out.window_lo_mhz = window_lo_mhz;
  out.window_hi_mhz = window_hi_mhz;
  out.duration_hr = duration_hr;
  if (!(out.sigma_mhz > 0.0))
    throw Error(ErrorCode::fit_failure, "fit_linewidth: non-positive sigma");
  return out;
}

DiffusivityPair diffusivities(double sigma_mhz, double duration_hr) {
  if (!(sigma_mhz > 0.0) || !(duration_hr > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "diffusivities: sigma and duration must be > 0");
  DiffusivityPair out;
  out.d_k = sigma_mhz / (2.0 * std::sqrt(duration_hr));
  // Derived from d_k so the d_1d = 2 d_k^2 identity holds to the last bit.
  out.d_1d = 2.0 * out.d_k * out.d_k;
  return out;
}

}  // namespace starkspec
