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

#include "uavsec/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavsec {

CVector steering_vector(double theta_rad, int n, double spacing_wavelengths)
{
    if (n < 1)
        throw std::invalid_argument("steering_vector: antenna count must be positive");
    const double step = -2.0 * std::numbers::pi * spacing_wavelengths * std::sin(theta_rad);
    CVector a(n);
    for (int m = 0; m < n; ++m)
        a(m) = std::polar(1.0, step * m);
    return a;
}

double pathloss_db(double d_los_m, double f_c_ghz)
{
    if (!(d_los_m > 0.0) || !(f_c_ghz > 0.0))
        throw std::invalid_argument("pathloss_db: distance and carrier must be positive");
    return 32.4 + 21.0 * std::log10(d_los_m) + 20.0 * std::log10(f_c_ghz);
}

double noise_power_dbm(const ScenarioConfig& config)
{
    if (!(config.bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power_dbm: bandwidth must be positive");
    return config.noise_psd_dbm_hz + 10.0 * std::log10(config.bandwidth_hz) + config.noise_figure_db;
}

double los_distance_m(double horizontal_m, double altitude_m)
{
    return std::hypot(horizontal_m, altitude_m);
}

Geometry draw_geometry(const ScenarioConfig& config, Rng& rng)
{
    Geometry g;
    const auto k = static_cast<std::size_t>(config.k_users);
    g.user_distances_m.resize(k);
    g.user_los_angles_rad.resize(k);
    std::uniform_real_distribution<double> dist(config.d_min_m, config.d_max_m);
    for (std::size_t i = 0; i < k; ++i) {
        // uniform_real_distribution on [a, a) is undefined, keep the degenerate case exact
        g.user_distances_m[i] = config.d_min_m == config.d_max_m ? config.d_min_m : dist(rng);
        g.user_los_angles_rad[i] = std::atan(config.h_uav_m / g.user_distances_m[i]);
    }
    g.eve_distance_m = config.d_e_m;
    g.eve_los_angle_rad = std::atan(config.h_uav_m / config.d_e_m);
    double eps_deg = 0.0;
    if (config.sigma_eps_deg > 0.0) {
        std::normal_distribution<double> err(0.0, config.sigma_eps_deg);
        eps_deg = err(rng);
    }
    g.eve_los_angle_est_rad = g.eve_los_angle_rad + deg_to_rad(eps_deg);
    return g;
}

LinkBudget link_budget(const Geometry& geometry, const ScenarioConfig& config)
{
    LinkBudget b;
    const double noise_dbm = noise_power_dbm(config);
    auto rho = [&](double pl_db) { return std::pow(10.0, (config.p_tx_dbm - pl_db - noise_dbm) / 10.0); };
    for (double d : geometry.user_distances_m) {
        const double pl = pathloss_db(los_distance_m(d, config.h_uav_m), config.f_c_ghz);
        b.pl_users_db.push_back(pl);
        b.rho_users.push_back(rho(pl));
    }
    b.pl_eve_db = pathloss_db(los_distance_m(geometry.eve_distance_m, config.h_uav_m), config.f_c_ghz);
    b.rho_eve = rho(b.pl_eve_db);
    return b;
}

CMatrix los_matrix(const Geometry& geometry, const ScenarioConfig& config)
{
    const auto k = static_cast<Eigen::Index>(geometry.user_los_angles_rad.size());
    CMatrix h(config.n_t, k);
    for (Eigen::Index i = 0; i < k; ++i)
        h.col(i) = steering_vector(geometry.user_los_angles_rad[static_cast<std::size_t>(i)], config.n_t,
                                   config.antenna_spacing_wavelengths);
    return h;
}

namespace {

CVector complex_gaussian(int n, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CVector v(n);
    for (int i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

}  // namespace

ChannelRealization draw_channel(const Geometry& geometry, const ScenarioConfig& config, Rng& rng)
{
    const double kappa = config.kappa_linear();
    const double los_gain = std::sqrt(kappa / (kappa + 1.0));
    const double nlos_gain = std::sqrt(1.0 / (kappa + 1.0));
    const int n = config.n_t;

    ChannelRealization r;
    r.h_los_matrix = los_matrix(geometry, config);
    r.h_matrix.resize(n, r.h_los_matrix.cols());
    for (Eigen::Index k = 0; k < r.h_los_matrix.cols(); ++k)
        r.h_matrix.col(k) = los_gain * r.h_los_matrix.col(k) + nlos_gain * complex_gaussian(n, rng);

    r.h_los_eve = steering_vector(geometry.eve_los_angle_rad, n, config.antenna_spacing_wavelengths);
    r.h_eve = los_gain * r.h_los_eve + nlos_gain * complex_gaussian(n, rng);
    r.g_eve = geometry.eve_los_angle_est_rad == geometry.eve_los_angle_rad
                  ? r.h_los_eve
                  : steering_vector(geometry.eve_los_angle_est_rad, n, config.antenna_spacing_wavelengths);

    auto budget = link_budget(geometry, config);
    r.pl_users_db = std::move(budget.pl_users_db);
    r.pl_eve_db = budget.pl_eve_db;
    r.rho_users = std::move(budget.rho_users);
    r.rho_eve = budget.rho_eve;
    return r;
}

double los_mse_approx(double sigma_eps_deg, double theta_hat_rad, int n_t, double spacing_wavelengths)
{
    if (n_t < 1)
        throw std::invalid_argument("los_mse_approx: antenna count must be positive");
    const double sigma = deg_to_rad(sigma_eps_deg);
    const double n = n_t;
    const double c = std::cos(theta_hat_rad);
    const double k = 2.0 * std::numbers::pi * spacing_wavelengths;
    return sigma * sigma * c * c * k * k * n * (n - 1.0) * (2.0 * n - 1.0) / 6.0;
}

}  // namespace uavsec
