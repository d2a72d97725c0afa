#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/protocol.hpp"

namespace starkspec {

// Column layout of the bulk artifacts (units pinned in the headers):
//   t1_series.csv:    qubit_id,time_hr,t1_us,stderr_us
//   spectroscopy.csv: qubit_id,time_hr,shift_mhz,p1,shots
std::string t1_series_to_csv(const std::vector<T1TimeSeries>& series);
std::vector<T1TimeSeries> t1_series_from_csv(const std::string& text);

std::string maps_to_csv(const std::vector<SpectroscopyMap>& maps);
// Reconstructs one map per qubit; tau/shots metadata beyond the columns keep
// their defaults unless overridden by the caller.
std::vector<SpectroscopyMap> maps_from_csv(const std::string& text,
                                           double tau_us = 50.0);

std::uint64_t fnv1a64(const std::string& bytes);

// Manifest pinned to the emitted config bytes; no timestamps so a re-run is
// byte-identical.
std::string manifest_json(std::uint64_t master_seed,
                          const std::string& config_bytes,
                          const std::vector<std::string>& outputs);

}  // namespace starkspec
