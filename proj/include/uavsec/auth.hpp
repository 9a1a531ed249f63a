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

#include "uavsec/channel.hpp"
#include "uavsec/config.hpp"
#include "uavsec/precoders.hpp"
#include "uavsec/secrecy.hpp"

#include <vector>

namespace uavsec {

enum class Side { user, eve };

/// Moments of the tag-correlation statistic under H0 (wrong tag) and H1
/// (correct tag) for one receiver, with the channel held fixed.
struct AuthStatistics {
    double mu0 = 0.0;
    double nu0_sq = 0.0;
    double mu1 = 0.0;
    double nu1_sq = 0.0;
    Side side = Side::user;
    double tau_thr = 0.0;
    bool saturated = false;  // receiver sees no tag energy; variances are infinite
};

struct TagSignalModel {
    int l_tag = 1024;
    int key_bits = 64;
    TagKind tag_kind = TagKind::gaussian;

    /// Var(||t||^2): L_t for CN(0,1) tags, 0 for constant-modulus tags.
    double var_tag_norm() const { return tag_kind == TagKind::gaussian ? static_cast<double>(l_tag) : 0.0; }

    static TagSignalModel from(const ScenarioConfig& config) { return {config.l_tag, config.key_bits, config.tag_kind}; }
};

/// Eavesdropper gain below which statistics are reported as saturated.
inline constexpr double kSaturatedGain = 1.0e-30;

/// tau_thr = Phi^{-1}(1 - p_fa) * nu0.
double threshold(double nu0, double p_fa);

/// Statistics of the legitimate receiver given psi = delta*phi and its gain |h_u^H w_u|^2.
AuthStatistics user_stats(double psi, double desired_gain, double rho_user, const TagSignalModel& model, double p_fa);

/// Statistics of the eavesdropper monitoring one user.
AuthStatistics eve_stats(double phi, double psi, double eve_data_gain, double eve_an_gain, double rho_eve,
                         const TagSignalModel& model, double p_fa);

AuthStatistics user_stats(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta,
                          const ScenarioConfig& config, int u);
AuthStatistics eve_stats(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta,
                         const ScenarioConfig& config, int u);

/// P_A = 1 - Phi((tau_thr - mu1)/nu1).
double auth_probability(const AuthStatistics& stats, double p_fa);

/// P_A as a function of psi; psi -> 0 returns the limit p_fa.
double auth_probability(double psi, double desired_gain, double rho_user, const TagSignalModel& model, double p_fa);

/// Probability that an exhaustive ML key search over 2^key_bits keys returns
/// the correct key, from the H0/H1 moments of the eavesdropper statistic.
double key_recovery_probability(const AuthStatistics& stats_e, int key_bits);

struct PsiSearch {
    double psi = 0.0;
    double p_a = 0.0;
    bool infeasible = false;
};

/// Smallest psi in (0, psi_max] with P_A(psi) >= p_thr: coarse steps of
/// `psi_step`, then bisection to within 1e-8 (and 1e-9 relative).
PsiSearch minimal_psi(double desired_gain, double rho_user, const TagSignalModel& model, double p_fa, double p_thr,
                      double psi_max, double psi_step = 1.0e-4);

struct DeltaOptimum {
    double delta_opt = 1.0;  // common tag power factor: every user reaches p_thr
    double psi = 0.0;        // delta_opt * phi
    bool infeasible = false;
    std::vector<double> psi_per_user;
    std::vector<double> p_a_per_user;  // at delta_opt
};

DeltaOptimum optimize_delta(const LinkGains& gains, double phi, const TagSignalModel& model, double p_fa,
                            double p_thr, double psi_step = 1.0e-4);

DeltaOptimum optimize_delta(const ScenarioConfig& config, const Geometry& geometry, const ChannelRealization& real,
                            const PrecoderPair& pre, double p_thr);

}  // namespace uavsec
