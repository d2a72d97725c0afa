#pragma once

#include <cstdint>
#include <string>

#include "core/estimators.hpp"
#include "core/protocol.hpp"

namespace starkspec {

// Full campaign description parsed from the JSON config. Baths may be listed
// explicitly or drawn from a per-qubit "bath_random" block; the draw is
// deterministic in (master_seed, qubit index), so a config with random baths
// still yields byte-identical campaigns.
struct CampaignConfig {
  std::uint64_t master_seed = 0;
  std::vector<QubitModel> device;
  Schedule schedule;
  ScanGrid grid;
  T1MeasureConfig t1_cfg;
  EstimatorConfig estimator;
  std::string output_dir = "out";
  int threads = 1;
};

// Parses and validates; throws Error(parse) with the JSON field path of the
// first offending entry.
CampaignConfig parse_campaign_config(const std::string& json_text);

}  // namespace starkspec
