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

// Command-line front end: `uavsec sweep <kind>`, `uavsec validate`, `uavsec auth-opt`.

#include "uavsec/config.hpp"
#include "uavsec/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using uavsec::ScenarioConfig;

struct ConfigFlags {
    std::string config_file;
    std::map<std::string, std::string> overrides;
};

std::string kebab(std::string s)
{
    for (auto& ch : s)
        if (ch == '_')
            ch = '-';
    return s;
}

/// One string-valued flag per configuration field, plus short aliases.
void add_config_flags(CLI::App& app, ConfigFlags& flags)
{
    app.add_option("--config", flags.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    const std::map<std::string, std::vector<std::string>> aliases = {
        {"p_tx_dbm", {"--p-tx"}},
        {"rng_seed", {"--seed"}},
        {"sigma_eps_deg", {"--sigma-eps"}},
        {"kappa_db", {"--kappa"}},
    };
    for (const auto& line : uavsec::describe_config(ScenarioConfig{})) {
        const std::string key = line.substr(0, line.find(' '));
        std::string names = "--" + kebab(key);
        if (auto it = aliases.find(key); it != aliases.end())
            for (const auto& a : it->second)
                names += "," + a;
        app.add_option_function<std::string>(
            names, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, "override " + key);
    }
}

ScenarioConfig resolve_config(const ConfigFlags& flags)
{
    ScenarioConfig c;
    if (!flags.config_file.empty())
        c = uavsec::load_config_file(flags.config_file, c);
    uavsec::apply_key_values(c, flags.overrides);
    return c;
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + out_path + "'");
    out << text << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secrecy-rate and tag-authentication experiments for a massive-MIMO UAV downlink"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write one CSV");
    ConfigFlags sweep_flags;
    uavsec::SweepOptions so;
    std::string kind;
    std::string sweep_out;
    sweep->add_option("kind", kind, "phi, kappa, eps, delta or auth")->required();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->add_option("--trials", so.trials, "Monte Carlo trials per block")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", so.workers, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--phi-grid", so.phi_grid, "phi grid")->delimiter(',');
    sweep->add_option("--p-tx-grid", so.p_tx_grid, "transmit powers for the phi sweep, dBm")->delimiter(',');
    sweep->add_option("--kappa-grid", so.kappa_grid, "K-factors for the kappa sweep, dB")->delimiter(',');
    sweep->add_option("--eps-grid", so.eps_grid, "angle error std values for the eps sweep, degrees")->delimiter(',');
    sweep->add_option("--delta-grid", so.delta_grid, "tag power factors for the delta sweep")->delimiter(',');
    sweep->add_option("--delta-max", so.delta_max, "upper end of the default delta grid");
    sweep->add_option("--cf-geometries", so.cf_geometries, "geometries averaged by the closed forms (0: auto)");
    sweep->add_option("--cov-trials", so.cov_trials, "fading draws per geometry for covariance traces");
    add_config_flags(*sweep, sweep_flags);

    // validate
    auto* validate = app.add_subcommand("validate", "Run the invariant suite and print a JSON report");
    ConfigFlags val_flags;
    uavsec::ValidateOptions vo;
    std::string val_out;
    validate->add_option("--trials", vo.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    validate->add_option("--exact-draws", vo.exact_draws, "draws for the precoder structure checks");
    validate->add_option("--workers", vo.workers, "worker threads")->check(CLI::PositiveNumber);
    validate->add_option("--out", val_out, "write the report here instead of stdout");
    add_config_flags(*validate, val_flags);

    // auth-opt
    auto* auth = app.add_subcommand("auth-opt", "Optimise the tag power factor and report P_A and P_K");
    ConfigFlags auth_flags;
    std::size_t auth_trials = 1000;
    int auth_workers = 1;
    std::string auth_out;
    auth->add_option("--trials", auth_trials, "channel draws")->check(CLI::PositiveNumber);
    auth->add_option("--workers", auth_workers, "worker threads")->check(CLI::PositiveNumber);
    auth->add_option("--out", auth_out, "write the JSON here instead of stdout");
    add_config_flags(*auth, auth_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            so.kind = uavsec::parse_sweep_kind(kind);
            so.config = resolve_config(sweep_flags);
            const auto rows = uavsec::run_sweep_to_file(so, sweep_out);
            std::cerr << "wrote " << rows.size() << " rows to " << sweep_out << "\n";
        } else if (*validate) {
            vo.config = resolve_config(val_flags);
            emit(uavsec::to_json(uavsec::run_validation(vo)), val_out);
        } else if (*auth) {
            const auto c = resolve_config(auth_flags);
            emit(uavsec::to_json(c, uavsec::run_auth_opt(c, auth_trials, auth_workers)), auth_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
