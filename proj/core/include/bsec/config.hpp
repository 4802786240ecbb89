// Copyright 2026 The bsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * JSON configuration for NoiseParams.
 *
 *   {
 *     "u": [..] | "b_squared": [..],      per-ion coupling, ion 1 first
 *     "n_bar0": 660, "n_dot_per_ms": 180,
 *     "p_z": 0.01 | [[..]], "p_x": 0.004 | [[..]],
 *     "gamma_deph_per_us": 1e-5, "p_1to0": 4e-3, "p_0to1": 1.5e-3,
 *     "durations": {"sq_segment_us", "sq_segments", "xx_us", "measure_us"},
 *     "crosstalk": null | {"enabled", "chi": [[..]], "A": [[[..]]]},
 *     "cooling_reset": false
 *   }
 *
 * Every key is optional; unknown keys are rejected.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsec/noise.hpp"

namespace bsec {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LoadedConfig {
    NoiseParams params;
    std::vector<std::string> defaulted;  // keys filled from defaults
};

/// Throws ConfigError with the offending field in the message.
LoadedConfig parse_config(const nlohmann::json &doc);
LoadedConfig load_config(const std::filesystem::path &path);

/// Canonical JSON form; parse_config(to_json(p)) reproduces p.
nlohmann::json to_json(const NoiseParams &params);

/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const NoiseParams &params);

}  // namespace bsec
