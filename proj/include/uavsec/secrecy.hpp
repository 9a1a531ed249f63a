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

#include <cstddef>
#include <span>
#include <vector>

namespace uavsec {

/// Squared effective channel gains of one realization under one precoder pair.
/// Everything the SINR and authentication formulas need, independent of phi and delta.
struct LinkGains {
    std::vector<double> desired;       // |h_u^H w_u|^2
    std::vector<double> interference;  // sum_{k != u} |h_u^H w_k|^2
    std::vector<double> an_user;       // sum_i |h_u^H v_i|^2
    std::vector<double> eve_data;      // |h_e^H w_u|^2, one per user
    double eve_an = 0.0;               // sum_i |h_e^H v_i|^2
    std::vector<double> rho_users;
    double rho_eve = 0.0;
};

LinkGains link_gains(const ChannelRealization& real, const PrecoderPair& pre);

double sinr_user(const LinkGains& gains, double phi, double delta, int u);
double sinr_eve(const LinkGains& gains, double phi, double delta, int u);
double sinr_user(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta, int u);
double sinr_eve(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta, int u);

enum class RateMethod { monte_carlo, closed_form };

/// Ergodic rates in bits/s/Hz. `r_user` is the per-user average.
struct RateReport {
    double r_user = 0.0;
    double r_eve = 0.0;
    double r_secrecy = 0.0;
    RateMethod method = RateMethod::monte_carlo;
    Scheme scheme = Scheme::conventional;
    std::size_t trials = 0;
    double std_err = 0.0;       // of the secrecy-rate difference before clamping
    double user_std_err = 0.0;
    double eve_std_err = 0.0;
};

double secrecy_rate(double r_user, double r_eve);

/// Power split maximising the asymptotic secrecy rate of the eavesdropper-aware design.
double optimal_phi(int n_t);

/// One Monte Carlo trial: fresh geometry and fading, both precoder designs evaluated.
struct TrialSample {
    Geometry geometry;
    LinkGains conventional;
    LinkGains proposed;
    int eve_user = 0;  // user the eavesdropper monitors in this trial
    double cond_conventional = 1.0;
    double cond_proposed = 1.0;
};

/// Trials [first_trial, first_trial + trials) of the stream defined by config.rng_seed.
std::vector<TrialSample> simulate_trials(const ScenarioConfig& config, std::size_t trials, int workers = 1,
                                         std::size_t first_trial = 0);

RateReport rates_from_trials(std::span<const TrialSample> samples, Scheme scheme, double phi, double delta);

RateReport monte_carlo_rates(const ScenarioConfig& config, Scheme scheme, std::size_t trials, int workers = 1);

// ---------------------------------------------------------------------------
// Closed forms under the central-Wishart approximation of H^H H.

/// 1/(kappa+1) I + kappa/(N_t (kappa+1)) H_LoS^H H_LoS; `kappa` is linear.
CMatrix wishart_sigma_h(const CMatrix& h_los, double kappa, int n_t);

struct WishartStats {
    CMatrix sigma_h;
    std::vector<double> sigma_h_inv_diag;  // [Sigma_H^{-1}]_uu
    double sigma_g_ee = 1.0;               // [Sigma_G^{-1}]_ee = (1 - c Sigma_H^{-1} b)^{-1}
    std::vector<double> delta_u;           // extra diagonal term of [Sigma_G^{-1}]_uu
    CVector b_vec;                         // upper-right block of Sigma_G
    CVector c_vec;                         // lower-left block (as a column, c = b^H)
};

WishartStats wishart_stats(const CMatrix& h_los, const CVector& g_eve, double kappa, int n_t);

/// E{w_u w_u^H} (averaged over users and per user) and E{V V^H} for the
/// conventional design at a fixed geometry.
struct PrecoderCovariances {
    CMatrix gamma_w;
    std::vector<CMatrix> gamma_w_per_user;
    CMatrix gamma_v;
    std::size_t trials = 0;
    bool low_trial_warning = false;  // fewer than 100 trials
};

PrecoderCovariances estimate_precoder_covariances(const ScenarioConfig& config, const Geometry& geometry,
                                                  std::size_t trials, std::uint64_t seed);

/// Tr[h_LoS,e h_LoS,e^H Gamma_w] (per user and averaged) and Tr[h_LoS,e h_LoS,e^H Gamma_V].
struct EveLosTraces {
    std::vector<double> w_per_user;
    double w_mean = 0.0;
    double v = 0.0;
    std::size_t trials = 0;
};

EveLosTraces eve_los_traces(const PrecoderCovariances& cov, const CVector& h_los_eve);

/// Same quantities as eve_los_traces(estimate_precoder_covariances(...)), computed
/// from K x K algebra per draw instead of forming N_t x N_t matrices.
EveLosTraces estimate_eve_los_traces(const ScenarioConfig& config, const Geometry& geometry, std::size_t trials,
                                     std::uint64_t seed);

/// How the conventional eavesdropper rate combines the user index.
enum class EveUserAveraging {
    covariance,  // Gamma_w averaged over u, one rate
    rate,        // one rate per u with its own Gamma_w, then averaged (default)
};

/// phi- and delta-independent pieces of every closed form at one geometry.
struct ClosedFormTerms {
    int n_t = 0;
    int k_users = 0;
    double kappa = 0.0;
    std::vector<double> rho_users;
    double rho_eve = 0.0;
    WishartStats wishart;
    bool has_traces = false;
    EveLosTraces traces;
    bool eve_pp_valid = true;  // the proposed eavesdropper closed form assumes a perfect angle
};

ClosedFormTerms closed_form_terms(const ScenarioConfig& config, const Geometry& geometry);

struct ClosedFormRate {
    std::vector<double> per_user;
    double mean = 0.0;
    bool valid = true;
};

ClosedFormRate user_rate_cv(const ClosedFormTerms& t, double phi, double delta);
ClosedFormRate user_rate_pp(const ClosedFormTerms& t, double phi, double delta);
ClosedFormRate eve_rate_cv(const ClosedFormTerms& t, double phi, double delta,
                           EveUserAveraging averaging = EveUserAveraging::rate);
ClosedFormRate eve_rate_pp(const ClosedFormTerms& t, double phi, double delta);

ClosedFormRate closed_form_user_cv(const ScenarioConfig& config, const Geometry& geometry);
ClosedFormRate closed_form_user_pp(const ScenarioConfig& config, const Geometry& geometry);
ClosedFormRate closed_form_eve_cv(const ScenarioConfig& config, const Geometry& geometry,
                                  const PrecoderCovariances& covariances,
                                  EveUserAveraging averaging = EveUserAveraging::rate);
ClosedFormRate closed_form_eve_cv(const ScenarioConfig& config, const Geometry& geometry, const EveLosTraces& traces,
                                  EveUserAveraging averaging = EveUserAveraging::rate);
ClosedFormRate closed_form_eve_pp(const ScenarioConfig& config, const Geometry& geometry);

}  // namespace uavsec
