// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace uavsec {

enum class TagKind { gaussian, hash_derived };

/// Every physical and protocol parameter of a downlink scenario.
///
/// Powers are in dBm, distances in metres, angles in degrees at this boundary
/// (converted to radians internally). `f_c_ghz` is the carrier normalised to 1 GHz.
struct ScenarioConfig {
    int n_t = 16;
    int k_users = 4;
    double kappa_db = 10.0;
    double p_tx_dbm = 35.0;
    double phi = 0.9;
    double delta = 0.0;
    double sigma_eps_deg = 0.0;
    double d_min_m = 10.0;
    double d_max_m = 100.0;
    double d_e_m = 10.0;
    double h_uav_m = 100.0;
    double f_c_ghz = 2.0;
    double antenna_spacing_wavelengths = 0.5;
    double bandwidth_hz = 1.0e6;
    double noise_figure_db = 9.0;
    double noise_psd_dbm_hz = -174.0;
    int l_tag = 1024;
    int key_bits = 64;
    double p_fa = 1.0e-3;
    double p_thr = 0.999;
    std::uint64_t rng_seed = 20240601;
    TagKind tag_kind = TagKind::gaussian;

    double kappa_linear() const;
};

/// A violated precondition of a configuration.
struct ConfigIssue {
    std::string code;     // stable identifier, e.g. "zf_infeasible"
    std::string message;
};

/// All precondition violations; empty when the configuration is usable.
std::vector<ConfigIssue> config_issues(const ScenarioConfig& config);

/// Throws std::invalid_argument describing the first issue, if any.
void validate_config(const ScenarioConfig& config);

/// Flat `key = value` text, `#` starts a comment. Unknown keys are an error.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Applies assignments to `config`. Keys are field names; `-` and `_` are interchangeable.
void apply_key_values(ScenarioConfig& config, const std::map<std::string, std::string>& values);

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

/// Fully resolved configuration as `key = value` lines (same format the loader reads).
std::vector<std::string> describe_config(const ScenarioConfig& config);

std::string to_string(TagKind kind);

}  // namespace uavsec
