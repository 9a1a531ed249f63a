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

#include "uavsec/config.hpp"
#include "uavsec/precoders.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uavsec {

enum class SweepKind { phi, kappa, eps, delta, auth };

SweepKind parse_sweep_kind(const std::string& name);
std::string to_string(SweepKind kind);

struct SweepOptions {
    SweepKind kind = SweepKind::phi;
    ScenarioConfig config;
    std::size_t trials = 1000;
    int workers = 1;
    // Empty grids take the defaults of the sweep kind.
    std::vector<double> phi_grid;
    std::vector<double> p_tx_grid;  // phi sweep only; default is config.p_tx_dbm
    std::vector<double> kappa_grid;
    std::vector<double> eps_grid;
    std::vector<double> delta_grid;
    double delta_max = 0.05;
    std::size_t cf_geometries = 0;  // 0: min(trials, 500)
    std::size_t cov_trials = 200;   // fading draws per geometry for the conventional covariance traces
};

/// {0.05, 0.10, ..., 0.95}, 1 - 1/n_t and 0.999, sorted.
std::vector<double> default_phi_grid(int n_t);
/// {0, 0.005, ..., delta_max}.
std::vector<double> default_delta_grid(double delta_max);

/// Throws std::invalid_argument for an unusable configuration or grid.
void validate_sweep(const SweepOptions& options);

/// One CSV row. Unset optionals are written as empty fields.
struct SweepRow {
    std::string sweep_id;
    std::string independent_var;
    double independent_value = 0.0;
    Scheme scheme = Scheme::conventional;
    int n_t = 0;
    int k_users = 0;
    double p_tx_dbm = 0.0;
    double kappa_db = 0.0;
    double sigma_eps_deg = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    std::optional<double> mc_user_rate;
    std::optional<double> mc_eve_rate;
    std::optional<double> mc_secrecy_rate;
    std::optional<double> mc_stderr;
    std::optional<double> mc_sum_secrecy_rate;
    std::optional<double> cf_user_rate;
    std::optional<double> cf_eve_rate;
    std::optional<double> cf_secrecy_rate;
    std::optional<double> cf_sum_secrecy_rate;
    std::optional<double> p_a;
    std::optional<double> p_k;
    std::optional<double> delta_opt;
    double p_fa = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

std::vector<SweepRow> run_sweep(const SweepOptions& options);

std::vector<std::string> csv_columns();
void write_csv(std::ostream& out, const SweepOptions& options, const std::vector<SweepRow>& rows);

/// Validates options and the output path, runs the sweep and writes the CSV.
std::vector<SweepRow> run_sweep_to_file(const SweepOptions& options, const std::string& out_path);

// ---------------------------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    ScenarioConfig config;
    std::vector<ConfigIssue> issues;
    std::vector<ConfigIssue> warnings;
    std::vector<ValidationCheck> checks;
    bool passed() const;
};

struct ValidateOptions {
    ScenarioConfig config;
    std::size_t trials = 2000;
    std::size_t exact_draws = 50;
    int workers = 1;
    double user_rate_tolerance = 0.05;
    // Relative tolerance of the eavesdropper closed forms; negative selects
    // 0.10 for n_t >= 64 and 0.20 below (the ratio-of-means step is a large-array result).
    double eve_rate_tolerance = -1.0;
};

ValidationReport run_validation(const ValidateOptions& options);
std::string to_json(const ValidationReport& report);

// ---------------------------------------------------------------------------

struct AuthOptSummary {
    Scheme scheme = Scheme::conventional;
    double delta_opt = 0.0;  // trial average
    double psi = 0.0;
    double p_a = 0.0;
    double p_k = 0.0;
    std::size_t infeasible_trials = 0;
    std::size_t trials = 0;
};

/// Tag power optimisation at config.phi over `trials` channel draws, both designs.
std::vector<AuthOptSummary> run_auth_opt(const ScenarioConfig& config, std::size_t trials, int workers = 1);
std::string to_json(const ScenarioConfig& config, const std::vector<AuthOptSummary>& results);

}  // namespace uavsec
