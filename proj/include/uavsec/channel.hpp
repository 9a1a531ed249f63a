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
#include "uavsec/rng.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace uavsec {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Horizontal placement of the UAVs and the resulting LoS elevation angles (radians).
struct Geometry {
    std::vector<double> user_distances_m;
    double eve_distance_m = 0.0;
    std::vector<double> user_los_angles_rad;
    double eve_los_angle_rad = 0.0;
    double eve_los_angle_est_rad = 0.0;  // what the ground station believes
};

/// Large-scale quantities that depend only on geometry and link budget.
struct LinkBudget {
    std::vector<double> pl_users_db;
    double pl_eve_db = 0.0;
    std::vector<double> rho_users;  // linear SNR P_Tx / (PL * noise)
    double rho_eve = 0.0;
};

/// One small-scale fading draw for all users and the eavesdropper.
struct ChannelRealization {
    CMatrix h_matrix;     // N_t x K
    CVector h_eve;        // N_t
    CMatrix h_los_matrix; // N_t x K
    CVector h_los_eve;    // N_t, true eavesdropper direction
    CVector g_eve;        // N_t, estimated eavesdropper direction
    std::vector<double> pl_users_db;
    double pl_eve_db = 0.0;
    std::vector<double> rho_users;
    double rho_eve = 0.0;
};

/// ULA response, entry m is exp(-j 2 pi spacing m sin(theta)).
CVector steering_vector(double theta_rad, int n, double spacing_wavelengths);

/// 3GPP UMi LoS path loss in dB; `f_c_ghz` normalised to 1 GHz.
double pathloss_db(double d_los_m, double f_c_ghz);

double noise_power_dbm(const ScenarioConfig& config);

double los_distance_m(double horizontal_m, double altitude_m);

Geometry draw_geometry(const ScenarioConfig& config, Rng& rng);

LinkBudget link_budget(const Geometry& geometry, const ScenarioConfig& config);

/// Columns are the users' LoS steering vectors.
CMatrix los_matrix(const Geometry& geometry, const ScenarioConfig& config);

ChannelRealization draw_channel(const Geometry& geometry, const ScenarioConfig& config, Rng& rng);

/// First-order approximation of E||a(theta_hat - eps) - a(theta_hat)||^2 for
/// eps ~ N(0, sigma^2); sigma is given in degrees.
double los_mse_approx(double sigma_eps_deg, double theta_hat_rad, int n_t, double spacing_wavelengths);

constexpr double deg_to_rad(double deg) { return deg * 3.14159265358979323846 / 180.0; }

}  // namespace uavsec
