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

#include "uavsec/auth.hpp"

#include "uavsec/normal.hpp"
#include "uavsec/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavsec {

double threshold(double nu0, double p_fa)
{
    return normal_quantile(1.0 - p_fa) * nu0;
}

AuthStatistics user_stats(double psi, double desired_gain, double rho_user, const TagSignalModel& model, double p_fa)
{
    if (!(psi > 0.0))
        throw std::invalid_argument("user_stats: tag power delta*phi must be positive");
    const double lt = model.l_tag;
    const double noise = 1.0 / (rho_user * psi * desired_gain);
    AuthStatistics s;
    s.side = Side::user;
    s.mu0 = 0.0;
    s.mu1 = lt;
    s.nu0_sq = 0.5 * lt * (1.0 + noise);
    s.nu1_sq = model.var_tag_norm() + 0.5 * lt * noise;
    s.tau_thr = threshold(std::sqrt(s.nu0_sq), p_fa);
    return s;
}

AuthStatistics eve_stats(double phi, double psi, double eve_data_gain, double eve_an_gain, double rho_eve,
                         const TagSignalModel& model, double p_fa)
{
    if (!(psi > 0.0))
        throw std::invalid_argument("eve_stats: tag power delta*phi must be positive");
    const double lt = model.l_tag;
    AuthStatistics s;
    s.side = Side::eve;
    s.mu0 = 0.0;
    s.mu1 = lt;
    if (!(eve_data_gain >= kSaturatedGain)) {
        s.saturated = true;
        s.nu0_sq = std::numeric_limits<double>::infinity();
        s.nu1_sq = std::numeric_limits<double>::infinity();
        s.tau_thr = std::numeric_limits<double>::infinity();
        return s;
    }
    const double denom = psi * eve_data_gain;
    const double impairment = (1.0 - phi) * eve_an_gain / denom + 1.0 / (rho_eve * denom);
    s.nu0_sq = 0.5 * lt * (1.0 + impairment);
    s.nu1_sq = model.var_tag_norm() + 0.5 * lt * impairment;
    s.tau_thr = threshold(std::sqrt(s.nu0_sq), p_fa);
    return s;
}

AuthStatistics user_stats(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta,
                          const ScenarioConfig& config, int u)
{
    const auto gains = link_gains(real, pre);
    const auto i = static_cast<std::size_t>(u);
    if (u < 0 || i >= gains.desired.size())
        throw std::out_of_range("user_stats: user index out of range");
    return user_stats(delta * phi, gains.desired[i], gains.rho_users[i], TagSignalModel::from(config), config.p_fa);
}

AuthStatistics eve_stats(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta,
                         const ScenarioConfig& config, int u)
{
    const auto gains = link_gains(real, pre);
    const auto i = static_cast<std::size_t>(u);
    if (u < 0 || i >= gains.eve_data.size())
        throw std::out_of_range("eve_stats: user index out of range");
    return eve_stats(phi, delta * phi, gains.eve_data[i], gains.eve_an, gains.rho_eve, TagSignalModel::from(config),
                     config.p_fa);
}

double auth_probability(const AuthStatistics& stats, double p_fa)
{
    if (stats.saturated)
        return p_fa;
    const double tau = threshold(std::sqrt(stats.nu0_sq), p_fa);
    return 1.0 - normal_cdf((tau - stats.mu1) / std::sqrt(stats.nu1_sq));
}

double auth_probability(double psi, double desired_gain, double rho_user, const TagSignalModel& model, double p_fa)
{
    if (!(psi > 0.0) || !(desired_gain > 0.0))
        return p_fa;
    const auto s = user_stats(psi, desired_gain, rho_user, model, p_fa);
    if (!std::isfinite(s.nu0_sq) || !std::isfinite(s.nu1_sq))
        return p_fa;
    return auth_probability(s, p_fa);
}

double key_recovery_probability(const AuthStatistics& s, int key_bits)
{
    if (key_bits < 0)
        throw std::invalid_argument("key_recovery_probability: key_bits must be non-negative");
    const double floor = std::ldexp(1.0, -key_bits);
    if (s.saturated || !std::isfinite(s.nu0_sq) || !std::isfinite(s.nu1_sq) || !std::isfinite(s.mu0) ||
        !std::isfinite(s.mu1) || !(s.nu0_sq > 0.0) || !(s.nu1_sq > 0.0))
        return floor;
    if (key_bits == 0)
        return 1.0;

    const double wrong_keys = std::ldexp(1.0, key_bits) - 1.0;
    const double nu0 = std::sqrt(s.nu0_sq);
    const double nu1 = std::sqrt(s.nu1_sq);
    // Integrate over z = (tau - mu1)/nu1 so the H1 density is the standard normal.
    auto integrand = [&](double z) {
        const double z0 = (s.mu1 + nu1 * z - s.mu0) / nu0;
        return std::exp(wrong_keys * normal_log_cdf(z0)) * normal_pdf(z);
    };

    double result = 0.0;
    for (double half_width : {10.0, 20.0, 38.0}) {
        constexpr int segments = 64;
        std::vector<double> parts(segments);
        for (int i = 0; i < segments; ++i) {
            const double a = -half_width + 2.0 * half_width * i / segments;
            const double b = -half_width + 2.0 * half_width * (i + 1) / segments;
            parts[static_cast<std::size_t>(i)] =
                boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 12, 1e-12);
        }
        result = pairwise_sum(parts);
        // H1 mass outside the window bounds the neglected part of the integral.
        const double tail = 2.0 * normal_cdf(-half_width);
        if (tail <= 1e-3 * result)
            break;
    }
    return std::clamp(result, floor, 1.0);
}

PsiSearch minimal_psi(double desired_gain, double rho_user, const TagSignalModel& model, double p_fa, double p_thr,
                      double psi_max, double psi_step)
{
    if (!(p_thr > 0.0 && p_thr < 1.0))
        throw std::invalid_argument("minimal_psi: p_thr must lie in (0, 1)");
    if (!(psi_step > 0.0) || !(psi_max > 0.0))
        throw std::invalid_argument("minimal_psi: psi_step and psi_max must be positive");
    auto pa = [&](double psi) { return auth_probability(psi, desired_gain, rho_user, model, p_fa); };

    PsiSearch out;
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    for (long k = 1;; ++k) {
        hi = std::min(psi_max, static_cast<double>(k) * psi_step);
        if (pa(hi) >= p_thr) {
            found = true;
            break;
        }
        if (hi >= psi_max)
            break;
        lo = hi;
    }
    if (!found) {
        out.psi = psi_max;
        out.p_a = pa(psi_max);
        out.infeasible = true;
        return out;
    }
    // P_A is increasing in psi: keep pa(hi) >= p_thr > pa(lo).
    for (int it = 0; it < 200 && (hi - lo) > std::min(1e-8, 1e-9 * hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (pa(mid) >= p_thr)
            hi = mid;
        else
            lo = mid;
    }
    out.psi = hi;
    out.p_a = pa(hi);
    return out;
}

DeltaOptimum optimize_delta(const LinkGains& gains, double phi, const TagSignalModel& model, double p_fa,
                            double p_thr, double psi_step)
{
    if (!(phi > 0.0))
        throw std::invalid_argument("optimize_delta: phi must be positive");
    DeltaOptimum out;
    double psi = 0.0;
    for (std::size_t u = 0; u < gains.desired.size(); ++u) {
        const auto r = minimal_psi(gains.desired[u], gains.rho_users[u], model, p_fa, p_thr, phi, psi_step);
        out.psi_per_user.push_back(r.psi);
        out.infeasible = out.infeasible || r.infeasible;
        psi = std::max(psi, r.psi);
    }
    out.psi = psi;
    out.delta_opt = std::min(1.0, psi / phi);
    for (std::size_t u = 0; u < gains.desired.size(); ++u)
        out.p_a_per_user.push_back(auth_probability(out.psi, gains.desired[u], gains.rho_users[u], model, p_fa));
    return out;
}

DeltaOptimum optimize_delta(const ScenarioConfig& config, const Geometry& geometry, const ChannelRealization& real,
                            const PrecoderPair& pre, double p_thr)
{
    if (geometry.user_distances_m.size() != static_cast<std::size_t>(real.h_matrix.cols()))
        throw std::invalid_argument("optimize_delta: geometry and realization disagree on the user count");
    return optimize_delta(link_gains(real, pre), config.phi, TagSignalModel::from(config), config.p_fa, p_thr);
}

}  // namespace uavsec
