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

#include "uavsec/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace uavsec {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string normalise_key(std::string key)
{
    for (auto& c : key)
        if (c == '-')
            c = '_';
    return key;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& text)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    return v;
}

long long parse_integer(const std::string& key, const std::string& text)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
    return v;
}

struct Field {
    std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

Field real_field(double ScenarioConfig::*member)
{
    return {[member](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*member = parse_double(k, v); },
            [member](const ScenarioConfig& c) { return format_double(c.*member); }};
}

Field int_field(int ScenarioConfig::*member)
{
    return {[member](ScenarioConfig& c, const std::string& k, const std::string& v) {
                c.*member = static_cast<int>(parse_integer(k, v));
            },
            [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
}

// Ordered so describe_config output is stable.
const std::vector<std::pair<std::string, Field>>& fields()
{
    static const std::vector<std::pair<std::string, Field>> table = {
        {"n_t", int_field(&ScenarioConfig::n_t)},
        {"k_users", int_field(&ScenarioConfig::k_users)},
        {"kappa_db", real_field(&ScenarioConfig::kappa_db)},
        {"p_tx_dbm", real_field(&ScenarioConfig::p_tx_dbm)},
        {"phi", real_field(&ScenarioConfig::phi)},
        {"delta", real_field(&ScenarioConfig::delta)},
        {"sigma_eps_deg", real_field(&ScenarioConfig::sigma_eps_deg)},
        {"d_min_m", real_field(&ScenarioConfig::d_min_m)},
        {"d_max_m", real_field(&ScenarioConfig::d_max_m)},
        {"d_e_m", real_field(&ScenarioConfig::d_e_m)},
        {"h_uav_m", real_field(&ScenarioConfig::h_uav_m)},
        {"f_c_ghz", real_field(&ScenarioConfig::f_c_ghz)},
        {"antenna_spacing_wavelengths", real_field(&ScenarioConfig::antenna_spacing_wavelengths)},
        {"bandwidth_hz", real_field(&ScenarioConfig::bandwidth_hz)},
        {"noise_figure_db", real_field(&ScenarioConfig::noise_figure_db)},
        {"noise_psd_dbm_hz", real_field(&ScenarioConfig::noise_psd_dbm_hz)},
        {"l_tag", int_field(&ScenarioConfig::l_tag)},
        {"key_bits", int_field(&ScenarioConfig::key_bits)},
        {"p_fa", real_field(&ScenarioConfig::p_fa)},
        {"p_thr", real_field(&ScenarioConfig::p_thr)},
        {"rng_seed",
         {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
              std::uint64_t s = 0;
              const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
              if (ec != std::errc{} || end != v.data() + v.size())
                  throw std::invalid_argument("config: '" + k + "' expects an unsigned 64-bit integer, got '" + v + "'");
              c.rng_seed = s;
          },
          [](const ScenarioConfig& c) { return std::to_string(c.rng_seed); }}},
        {"tag_kind",
         {[](ScenarioConfig& c, const std::string&, const std::string& v) {
              if (v == "gaussian")
                  c.tag_kind = TagKind::gaussian;
              else if (v == "hash_derived" || v == "hash-derived")
                  c.tag_kind = TagKind::hash_derived;
              else
                  throw std::invalid_argument("config: 'tag_kind' must be gaussian or hash_derived, got '" + v + "'");
          },
          [](const ScenarioConfig& c) { return to_string(c.tag_kind); }}},
    };
    return table;
}

const Field* find_field(const std::string& key)
{
    for (const auto& [name, field] : fields())
        if (name == key)
            return &field;
    return nullptr;
}

}  // namespace

double ScenarioConfig::kappa_linear() const
{
    return std::pow(10.0, kappa_db / 10.0);
}

std::string to_string(TagKind kind)
{
    return kind == TagKind::gaussian ? "gaussian" : "hash_derived";
}

std::vector<ConfigIssue> config_issues(const ScenarioConfig& c)
{
    std::vector<ConfigIssue> issues;
    auto add = [&](std::string code, std::string msg) { issues.push_back({std::move(code), std::move(msg)}); };

    if (c.n_t < 2)
        add("antenna_count", "n_t must be at least 2");
    if (c.k_users < 1)
        add("user_count", "k_users must be at least 1");
    if (c.k_users >= c.n_t)
        add("zf_infeasible", "zero-forcing needs k_users < n_t (got K=" + std::to_string(c.k_users) +
                                 ", N_t=" + std::to_string(c.n_t) + ")");
    else if (c.k_users + 1 > c.n_t)
        add("zf_infeasible_proposed", "eavesdropper-aware zero-forcing needs k_users + 1 <= n_t");
    if (!(c.phi >= 0.0 && c.phi <= 1.0))
        add("phi_range", "phi must lie in [0, 1]");
    if (!(c.delta >= 0.0 && c.delta <= 1.0))
        add("delta_range", "delta must lie in [0, 1]");
    if (!(c.sigma_eps_deg >= 0.0) || !std::isfinite(c.sigma_eps_deg))
        add("sigma_eps", "sigma_eps_deg must be finite and non-negative");
    if (!(c.d_min_m > 0.0) || !(c.d_min_m <= c.d_max_m) || !std::isfinite(c.d_max_m))
        add("distance_range", "need 0 < d_min_m <= d_max_m");
    if (!(c.d_e_m > 0.0) || !std::isfinite(c.d_e_m))
        add("eve_distance", "d_e_m must be positive");
    if (!(c.h_uav_m > 0.0) || !std::isfinite(c.h_uav_m))
        add("altitude", "h_uav_m must be positive");
    if (!(c.f_c_ghz > 0.0) || !std::isfinite(c.f_c_ghz))
        add("carrier", "f_c_ghz must be positive");
    if (!(c.antenna_spacing_wavelengths > 0.0) || !std::isfinite(c.antenna_spacing_wavelengths))
        add("antenna_spacing", "antenna_spacing_wavelengths must be positive");
    if (!(c.bandwidth_hz > 0.0) || !std::isfinite(c.bandwidth_hz))
        add("bandwidth", "bandwidth_hz must be positive");
    if (!std::isfinite(c.p_tx_dbm) || !std::isfinite(c.noise_figure_db) || !std::isfinite(c.noise_psd_dbm_hz) ||
        !std::isfinite(c.kappa_db))
        add("non_finite_power", "powers and kappa must be finite");
    if (c.l_tag < 1)
        add("tag_length", "l_tag must be at least 1");
    if (c.key_bits < 0 || c.key_bits > 1023)
        add("key_bits", "key_bits must lie in [0, 1023]");
    if (!(c.p_fa > 0.0 && c.p_fa < 1.0))
        add("p_fa", "p_fa must lie in (0, 1)");
    if (!(c.p_thr > 0.0 && c.p_thr < 1.0))
        add("p_thr", "p_thr must lie in (0, 1)");
    return issues;
}

void validate_config(const ScenarioConfig& config)
{
    const auto issues = config_issues(config);
    if (!issues.empty())
        throw std::invalid_argument("invalid configuration [" + issues.front().code + "]: " + issues.front().message);
}

std::map<std::string, std::string> parse_key_values(std::istream& in)
{
    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        auto key = normalise_key(trim(line.substr(0, eq)));
        auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");
        out[key] = value;
    }
    return out;
}

void apply_key_values(ScenarioConfig& config, const std::map<std::string, std::string>& values)
{
    for (const auto& [raw_key, value] : values) {
        const auto key = normalise_key(raw_key);
        const Field* field = find_field(key);
        if (field == nullptr)
            throw std::invalid_argument("config: unknown key '" + raw_key + "'");
        field->set(config, key, value);
    }
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    apply_key_values(base, parse_key_values(in));
    return base;
}

std::vector<std::string> describe_config(const ScenarioConfig& config)
{
    std::vector<std::string> lines;
    for (const auto& [name, field] : fields())
        lines.push_back(name + " = " + field.get(config));
    return lines;
}

}  // namespace uavsec
