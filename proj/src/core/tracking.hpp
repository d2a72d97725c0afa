#pragma once

#include <vector>

#include "core/protocol.hpp"

namespace starkspec {

struct TrackConfig {
  double p_threshold = 0.315;     // record minima strictly below this P1
  double min_prominence = 0.02;   // reject shallow wiggles
  double cluster_gap_mhz = 2.0;   // auto-windowing: new feature after a gap

  void validate() const;
};

struct Feature {
  double omega_mhz = 0.0;
  double p1 = 0.0;
};

// Local minima strictly below the threshold, prominence-filtered, sorted by
// frequency. Empty result is fine.
std::vector<Feature> extract_minima(const ScanGrid& grid,
                                    const std::vector<double>& row_p1,
                                    const TrackConfig& cfg);

struct FeatureCluster {
  double lo_mhz = 0.0;
  double hi_mhz = 0.0;
  std::vector<double> positions_mhz;  // pooled over slices
};

struct TrackSet {
  // Per-slice features, same order as the map's time slices.
  std::vector<std::vector<Feature>> per_slice;
  // All positions pooled, then grouped into gap-separated clusters.
  std::vector<FeatureCluster> clusters;
};

TrackSet accumulate_tracks(const SpectroscopyMap& map, const TrackConfig& cfg);

// Histogram of pooled positions over a window.
struct PositionHistogram {
  std::vector<double> centers_mhz;
  std::vector<double> counts;
};

PositionHistogram histogram_positions(const std::vector<double>& positions_mhz,
                                      double lo_mhz, double hi_mhz,
                                      double bin_width_mhz);

struct LinewidthFit {
  double mu_mhz = 0.0;
  double sigma_mhz = 0.0;
  double amplitude = 0.0;
  double window_lo_mhz = 0.0;
  double window_hi_mhz = 0.0;
  double duration_hr = 0.0;
};

// Gaussian linewidth fit over a truncated window, in the diffusion
// convention counts = N exp(-(w-mu)^2 / (4 sigma^2)). Needs >= 5 nonzero
// bins inside the window.
LinewidthFit fit_linewidth(const PositionHistogram& hist, double window_lo_mhz,
                           double window_hi_mhz, double duration_hr);

struct DiffusivityPair {
  double d_k = 0.0;   // MHz / sqrt(hr), sigma(t) = 2 D_K sqrt(t)
  double d_1d = 0.0;  // MHz^2 / hr,     sigma(t) = sqrt(2 D_1d t)
};

// Diffusivities from an accumulated linewidth; d_1d == 2 d_k^2 exactly.
DiffusivityPair diffusivities(double sigma_mhz, double duration_hr);

}  // namespace starkspec
