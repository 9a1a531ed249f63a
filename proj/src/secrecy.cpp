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

#include "uavsec/secrecy.hpp"

#include "uavsec/parallel.hpp"
#include "uavsec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsec {

LinkGains link_gains(const ChannelRealization& real, const PrecoderPair& pre)
{
    const auto k = real.h_matrix.cols();
    LinkGains g;
    g.desired.resize(static_cast<std::size_t>(k));
    g.interference.resize(static_cast<std::size_t>(k));
    g.an_user.resize(static_cast<std::size_t>(k));
    g.eve_data.resize(static_cast<std::size_t>(k));

    const CMatrix hw = real.h_matrix.adjoint() * pre.w_matrix;
    const CMatrix hv = real.h_matrix.adjoint() * pre.v_matrix;
    const Eigen::RowVectorXcd ew = real.h_eve.adjoint() * pre.w_matrix;
    const Eigen::RowVectorXcd ev = real.h_eve.adjoint() * pre.v_matrix;
    for (Eigen::Index u = 0; u < k; ++u) {
        const auto i = static_cast<std::size_t>(u);
        g.desired[i] = std::norm(hw(u, u));
        double interf = 0.0;
        for (Eigen::Index j = 0; j < k; ++j)
            if (j != u)
                interf += std::norm(hw(u, j));
        g.interference[i] = interf;
        g.an_user[i] = hv.row(u).squaredNorm();
        g.eve_data[i] = std::norm(ew(u));
    }
    g.eve_an = ev.squaredNorm();
    g.rho_users = real.rho_users;
    g.rho_eve = real.rho_eve;
    return g;
}

double sinr_user(const LinkGains& g, double phi, double delta, int u)
{
    const auto i = static_cast<std::size_t>(u);
    if (u < 0 || i >= g.desired.size())
        throw std::out_of_range("sinr_user: user index out of range");
    const double signal = phi * (1.0 - delta) * g.desired[i];
    const double noise = phi * g.interference[i] + (1.0 - phi) * g.an_user[i] + 1.0 / g.rho_users[i];
    return signal / noise;
}

double sinr_eve(const LinkGains& g, double phi, double delta, int u)
{
    const auto i = static_cast<std::size_t>(u);
    if (u < 0 || i >= g.eve_data.size())
        throw std::out_of_range("sinr_eve: user index out of range");
    const double signal = phi * (1.0 - delta) * g.eve_data[i];
    const double noise = (1.0 - phi) * g.eve_an + 1.0 / g.rho_eve;
    return signal / noise;
}

double sinr_user(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta, int u)
{
    return sinr_user(link_gains(real, pre), phi, delta, u);
}

double sinr_eve(const ChannelRealization& real, const PrecoderPair& pre, double phi, double delta, int u)
{
    return sinr_eve(link_gains(real, pre), phi, delta, u);
}

double secrecy_rate(double r_user, double r_eve)
{
    return std::max(0.0, r_user - r_eve);
}

double optimal_phi(int n_t)
{
    if (n_t < 1)
        throw std::invalid_argument("optimal_phi: antenna count must be positive");
    return 1.0 - 1.0 / static_cast<double>(n_t);
}

std::vector<TrialSample> simulate_trials(const ScenarioConfig& config, std::size_t trials, int workers,
                                         std::size_t first_trial)
{
    validate_config(config);
    std::vector<TrialSample> out(trials);
    parallel_for(trials, workers, [&](std::size_t i) {
        const std::uint64_t t = first_trial + i;
        auto geo_rng = trial_rng(config.rng_seed, t, Stream::geometry);
        auto fading_rng = trial_rng(config.rng_seed, t, Stream::fading);
        auto user_rng = trial_rng(config.rng_seed, t, Stream::eve_user);

        TrialSample& s = out[i];
        s.geometry = draw_geometry(config, geo_rng);
        const auto real = draw_channel(s.geometry, config, fading_rng);
        const auto cv = conventional_precoders(real.h_matrix);
        const auto pp = proposed_precoders(real.h_matrix, real.g_eve);
        s.conventional = link_gains(real, cv);
        s.proposed = link_gains(real, pp);
        s.cond_conventional = cv.condition_number;
        s.cond_proposed = pp.condition_number;
        std::uniform_int_distribution<int> pick(0, config.k_users - 1);
        s.eve_user = pick(user_rng);
    });
    return out;
}

RateReport rates_from_trials(std::span<const TrialSample> samples, Scheme scheme, double phi, double delta)
{
    const std::size_t n = samples.size();
    std::vector<double> user(n), eve(n), diff(n);
    for (std::size_t t = 0; t < n; ++t) {
        const LinkGains& g = scheme == Scheme::conventional ? samples[t].conventional : samples[t].proposed;
        const auto k = static_cast<int>(g.desired.size());
        double acc = 0.0;
        for (int u = 0; u < k; ++u)
            acc += std::log2(1.0 + sinr_user(g, phi, delta, u));
        user[t] = acc / k;
        eve[t] = std::log2(1.0 + sinr_eve(g, phi, delta, samples[t].eve_user));
        diff[t] = user[t] - eve[t];
    }
    const auto su = sample_stats(user);
    const auto se = sample_stats(eve);
    const auto sd = sample_stats(diff);

    RateReport r;
    r.method = RateMethod::monte_carlo;
    r.scheme = scheme;
    r.trials = n;
    r.r_user = su.mean;
    r.r_eve = se.mean;
    r.r_secrecy = secrecy_rate(su.mean, se.mean);
    r.std_err = sd.std_err;
    r.user_std_err = su.std_err;
    r.eve_std_err = se.std_err;
    return r;
}

RateReport monte_carlo_rates(const ScenarioConfig& config, Scheme scheme, std::size_t trials, int workers)
{
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_rates: need at least one trial");
    const auto samples = simulate_trials(config, trials, workers);
    return rates_from_trials(samples, scheme, config.phi, config.delta);
}

CMatrix wishart_sigma_h(const CMatrix& h_los, double kappa, int n_t)
{
    const auto k = h_los.cols();
    CMatrix sigma = (kappa / (static_cast<double>(n_t) * (kappa + 1.0))) * (h_los.adjoint() * h_los);
    sigma += CMatrix::Identity(k, k) * (1.0 / (kappa + 1.0));
    return sigma;
}

WishartStats wishart_stats(const CMatrix& h_los, const CVector& g_eve, double kappa, int n_t)
{
    const auto k = h_los.cols();
    WishartStats w;
    w.sigma_h = wishart_sigma_h(h_los, kappa, n_t);
    const Eigen::LLT<CMatrix> llt(w.sigma_h);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("wishart_stats: Sigma_H is not positive definite");
    const CMatrix inv = llt.solve(CMatrix::Identity(k, k));

    w.b_vec = (std::sqrt(kappa) / (static_cast<double>(n_t) * std::sqrt(kappa + 1.0))) * (h_los.adjoint() * g_eve);
    w.c_vec = w.b_vec.conjugate();
    const CVector x = llt.solve(w.b_vec);
    const double quad = std::real(w.b_vec.dot(x));  // c Sigma_H^{-1} b
    const double schur = 1.0 - quad;
    w.sigma_g_ee = 1.0 / schur;
    w.sigma_h_inv_diag.resize(static_cast<std::size_t>(k));
    w.delta_u.resize(static_cast<std::size_t>(k));
    for (Eigen::Index u = 0; u < k; ++u) {
        w.sigma_h_inv_diag[static_cast<std::size_t>(u)] = std::real(inv(u, u));
        // [Sigma^{-1} b c Sigma^{-1}]_uu = |(Sigma^{-1} b)_u|^2
        w.delta_u[static_cast<std::size_t>(u)] = std::norm(x(u)) / schur;
    }
    return w;
}

PrecoderCovariances estimate_precoder_covariances(const ScenarioConfig& config, const Geometry& geometry,
                                                  std::size_t trials, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_precoder_covariances: need at least one trial");
    const int n = config.n_t;
    const int k = config.k_users;
    PrecoderCovariances c;
    c.trials = trials;
    c.low_trial_warning = trials < 100;
    c.gamma_v = CMatrix::Zero(n, n);
    c.gamma_w_per_user.assign(static_cast<std::size_t>(k), CMatrix::Zero(n, n));
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t, Stream::covariance);
        const auto real = draw_channel(geometry, config, rng);
        const auto pre = conventional_precoders(real.h_matrix);
        for (int u = 0; u < k; ++u)
            c.gamma_w_per_user[static_cast<std::size_t>(u)] += pre.w_matrix.col(u) * pre.w_matrix.col(u).adjoint();
        c.gamma_v += pre.v_matrix * pre.v_matrix.adjoint();
    }
    const double inv_t = 1.0 / static_cast<double>(trials);
    c.gamma_w = CMatrix::Zero(n, n);
    for (auto& g : c.gamma_w_per_user) {
        g *= inv_t;
        g = (0.5 * (g + g.adjoint())).eval();
        c.gamma_w += g / static_cast<double>(k);
    }
    c.gamma_v *= inv_t;
    c.gamma_v = (0.5 * (c.gamma_v + c.gamma_v.adjoint())).eval();
    return c;
}

EveLosTraces eve_los_traces(const PrecoderCovariances& cov, const CVector& a)
{
    EveLosTraces t;
    t.trials = cov.trials;
    // Tr[a a^H Gamma] = a^H Gamma a
    for (const auto& g : cov.gamma_w_per_user)
        t.w_per_user.push_back(std::real(a.dot(g * a)));
    t.w_mean = std::real(a.dot(cov.gamma_w * a));
    t.v = std::real(a.dot(cov.gamma_v * a));
    return t;
}

EveLosTraces estimate_eve_los_traces(const ScenarioConfig& config, const Geometry& geometry, std::size_t trials,
                                     std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_eve_los_traces: need at least one trial");
    const int n = config.n_t;
    const int k = config.k_users;
    const CVector a = steering_vector(geometry.eve_los_angle_rad, n, config.antenna_spacing_wavelengths);
    const double norm_a = a.squaredNorm();

    EveLosTraces t;
    t.trials = trials;
    t.w_per_user.assign(static_cast<std::size_t>(k), 0.0);
    std::vector<double> v_samples(trials);
    std::vector<std::vector<double>> w_samples(static_cast<std::size_t>(k), std::vector<double>(trials));
    for (std::size_t i = 0; i < trials; ++i) {
        auto rng = trial_rng(seed, i, Stream::covariance);
        const auto real = draw_channel(geometry, config, rng);
        const CMatrix gram = real.h_matrix.adjoint() * real.h_matrix;
        const Eigen::LLT<CMatrix> llt(gram);
        const CVector y = real.h_matrix.adjoint() * a;
        const CVector z = llt.solve(y);
        const CMatrix gram_inv = llt.solve(CMatrix::Identity(k, k));
        for (int u = 0; u < k; ++u)
            w_samples[static_cast<std::size_t>(u)][i] = std::norm(z(u)) / (k * std::real(gram_inv(u, u)));
        v_samples[i] = (norm_a - std::real(y.dot(z))) / static_cast<double>(n - k);
    }
    for (int u = 0; u < k; ++u) {
        auto& w = t.w_per_user[static_cast<std::size_t>(u)];
        w = pairwise_sum(w_samples[static_cast<std::size_t>(u)]) / static_cast<double>(trials);
        t.w_mean += w / k;
    }
    t.v = pairwise_sum(v_samples) / static_cast<double>(trials);
    return t;
}

ClosedFormTerms closed_form_terms(const ScenarioConfig& config, const Geometry& geometry)
{
    ClosedFormTerms t;
    t.n_t = config.n_t;
    t.k_users = config.k_users;
    t.kappa = config.kappa_linear();
    auto budget = link_budget(geometry, config);
    t.rho_users = std::move(budget.rho_users);
    t.rho_eve = budget.rho_eve;
    const CMatrix h_los = los_matrix(geometry, config);
    const CVector g_e = steering_vector(geometry.eve_los_angle_est_rad, config.n_t, config.antenna_spacing_wavelengths);
    t.wishart = wishart_stats(h_los, g_e, t.kappa, config.n_t);
    t.eve_pp_valid = geometry.eve_los_angle_est_rad == geometry.eve_los_angle_rad;
    return t;
}

namespace {

ClosedFormRate finish(std::vector<double> per_user, bool valid = true)
{
    ClosedFormRate r;
    r.valid = valid;
    double acc = 0.0;
    for (double v : per_user)
        acc += v;
    r.mean = per_user.empty() ? 0.0 : acc / static_cast<double>(per_user.size());
    r.per_user = std::move(per_user);
    return r;
}

}  // namespace

ClosedFormRate user_rate_cv(const ClosedFormTerms& t, double phi, double delta)
{
    std::vector<double> out;
    const double dof = t.n_t - t.k_users;
    for (std::size_t u = 0; u < t.rho_users.size(); ++u) {
        const double snr = dof * phi * (1.0 - delta) * t.rho_users[u] / (t.k_users * t.wishart.sigma_h_inv_diag[u]);
        out.push_back(std::log2(1.0 + snr));
    }
    return finish(std::move(out));
}

ClosedFormRate user_rate_pp(const ClosedFormTerms& t, double phi, double delta)
{
    std::vector<double> out;
    const double dof = t.n_t - t.k_users - 1;
    for (std::size_t u = 0; u < t.rho_users.size(); ++u) {
        const double diag = t.wishart.sigma_h_inv_diag[u] + t.wishart.delta_u[u];
        const double snr = dof * phi * (1.0 - delta) * t.rho_users[u] / (t.k_users * diag);
        out.push_back(std::log2(1.0 + snr));
    }
    return finish(std::move(out));
}

ClosedFormRate eve_rate_cv(const ClosedFormTerms& t, double phi, double delta, EveUserAveraging averaging)
{
    if (!t.has_traces)
        throw std::invalid_argument("eve_rate_cv: precoder covariance traces are missing");
    const double los = t.kappa / (t.kappa + 1.0);
    const double nlos = 1.0 / (t.kappa + 1.0);
    const double an = (1.0 - phi) * (los * t.traces.v + nlos) + 1.0 / t.rho_eve;
    auto rate = [&](double w_trace) {
        const double data = phi * (1.0 - delta) * (nlos / t.k_users + los * w_trace);
        return std::log2(1.0 + data / an);
    };
    std::vector<double> out;
    if (averaging == EveUserAveraging::covariance) {
        out.assign(static_cast<std::size_t>(t.k_users), rate(t.traces.w_mean));
    } else {
        for (double w : t.traces.w_per_user)
            out.push_back(rate(w));
    }
    return finish(std::move(out));
}

ClosedFormRate eve_rate_pp(const ClosedFormTerms& t, double phi, double delta)
{
    const double los = t.kappa / (t.kappa + 1.0);
    const double nlos = 1.0 / (t.kappa + 1.0);
    const double dof = t.n_t - t.k_users - 1;
    const double data = phi * (1.0 - delta) * nlos / t.k_users;
    const double an = (1.0 - phi) * (los * dof / t.wishart.sigma_g_ee + nlos) + 1.0 / t.rho_eve;
    const double r = std::log2(1.0 + data / an);
    return finish(std::vector<double>(static_cast<std::size_t>(t.k_users), r), t.eve_pp_valid);
}

ClosedFormRate closed_form_user_cv(const ScenarioConfig& config, const Geometry& geometry)
{
    if (config.k_users >= config.n_t)
        throw std::invalid_argument("closed_form_user_cv: need K < N_t");
    return user_rate_cv(closed_form_terms(config, geometry), config.phi, config.delta);
}

ClosedFormRate closed_form_user_pp(const ScenarioConfig& config, const Geometry& geometry)
{
    if (config.k_users + 1 > config.n_t)
        throw std::invalid_argument("closed_form_user_pp: need K + 1 <= N_t");
    return user_rate_pp(closed_form_terms(config, geometry), config.phi, config.delta);
}

ClosedFormRate closed_form_eve_cv(const ScenarioConfig& config, const Geometry& geometry,
                                  const PrecoderCovariances& covariances, EveUserAveraging averaging)
{
    const CVector a = steering_vector(geometry.eve_los_angle_rad, config.n_t, config.antenna_spacing_wavelengths);
    return closed_form_eve_cv(config, geometry, eve_los_traces(covariances, a), averaging);
}

ClosedFormRate closed_form_eve_cv(const ScenarioConfig& config, const Geometry& geometry, const EveLosTraces& traces,
                                  EveUserAveraging averaging)
{
    auto t = closed_form_terms(config, geometry);
    t.traces = traces;
    t.has_traces = true;
    return eve_rate_cv(t, config.phi, config.delta, averaging);
}

ClosedFormRate closed_form_eve_pp(const ScenarioConfig& config, const Geometry& geometry)
{
    return eve_rate_pp(closed_form_terms(config, geometry), config.phi, config.delta);
}

}  // namespace uavsec
