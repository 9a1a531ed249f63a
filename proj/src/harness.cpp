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

#include "uavsec/harness.hpp"

#include "uavsec/auth.hpp"
#include "uavsec/channel.hpp"
#include "uavsec/parallel.hpp"
#include "uavsec/rng.hpp"
#include "uavsec/secrecy.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace uavsec {

namespace {

constexpr Scheme kSchemes[] = {Scheme::conventional, Scheme::proposed};

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return {};
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_field(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string{};
}

double mean_of(std::span<const double> v)
{
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : pairwise_sum(v) / static_cast<double>(v.size());
}

/// Seed of the covariance stream for closed-form geometry `index`.
std::uint64_t covariance_seed(std::uint64_t seed, std::size_t index)
{
    auto rng = trial_rng(seed, index, Stream::covariance);
    return rng();
}

/// Monte Carlo samples and closed-form terms for one fixed configuration.
struct Block {
    ScenarioConfig config;
    std::vector<TrialSample> samples;
    std::vector<ClosedFormTerms> terms;
};

Block make_block(const ScenarioConfig& config, const SweepOptions& o, bool closed_form)
{
    Block b;
    b.config = config;
    b.samples = simulate_trials(config, o.trials, o.workers);
    if (!closed_form)
        return b;
    const std::size_t n_geo = o.cf_geometries == 0 ? std::min<std::size_t>(o.trials, 500) : o.cf_geometries;
    b.terms.resize(std::min(n_geo, b.samples.size()));
    parallel_for(b.terms.size(), o.workers, [&](std::size_t t) {
        const auto& geo = b.samples[t].geometry;
        auto terms = closed_form_terms(config, geo);
        terms.traces = estimate_eve_los_traces(config, geo, o.cov_trials, covariance_seed(config.rng_seed, t));
        terms.has_traces = true;
        b.terms[t] = std::move(terms);
    });
    return b;
}

SweepRow base_row(const std::string& sweep_id, const std::string& var, double value, Scheme scheme,
                  const ScenarioConfig& c, double phi, double delta, std::size_t trials)
{
    SweepRow r;
    r.sweep_id = sweep_id;
    r.independent_var = var;
    r.independent_value = value;
    r.scheme = scheme;
    r.n_t = c.n_t;
    r.k_users = c.k_users;
    r.p_tx_dbm = c.p_tx_dbm;
    r.kappa_db = c.kappa_db;
    r.sigma_eps_deg = c.sigma_eps_deg;
    r.phi = phi;
    r.delta = delta;
    r.p_fa = c.p_fa;
    r.trials = trials;
    r.seed = c.rng_seed;
    return r;
}

void fill_rates(SweepRow& row, const Block& b, Scheme scheme, double phi, double delta)
{
    const auto mc = rates_from_trials(b.samples, scheme, phi, delta);
    const double k = b.config.k_users;
    row.mc_user_rate = mc.r_user;
    row.mc_eve_rate = mc.r_eve;
    row.mc_secrecy_rate = mc.r_secrecy;
    row.mc_stderr = mc.std_err;
    row.mc_sum_secrecy_rate = k * mc.r_secrecy;
    if (b.terms.empty())
        return;

    std::vector<double> user, eve;
    bool eve_valid = true;
    for (const auto& t : b.terms) {
        if (scheme == Scheme::conventional) {
            user.push_back(user_rate_cv(t, phi, delta).mean);
            eve.push_back(eve_rate_cv(t, phi, delta).mean);
        } else {
            user.push_back(user_rate_pp(t, phi, delta).mean);
            const auto e = eve_rate_pp(t, phi, delta);
            eve_valid = eve_valid && e.valid;
            eve.push_back(e.mean);
        }
    }
    row.cf_user_rate = mean_of(user);
    if (eve_valid) {
        row.cf_eve_rate = mean_of(eve);
        row.cf_secrecy_rate = secrecy_rate(*row.cf_user_rate, *row.cf_eve_rate);
        row.cf_sum_secrecy_rate = k * *row.cf_secrecy_rate;
    }
}

void append_rate_rows(std::vector<SweepRow>& rows, const Block& b, const std::string& sweep_id,
                      const std::string& var, double value, const std::vector<double>& phis, double delta,
                      std::size_t trials)
{
    for (double phi : phis)
        for (Scheme s : kSchemes) {
            auto row = base_row(sweep_id, var, value, s, b.config, phi, delta, trials);
            fill_rates(row, b, s, phi, delta);
            rows.push_back(std::move(row));
        }
}

struct AuthPoint {
    double psi = 0.0;
    double p_a = 0.0;
    double p_k = 0.0;
    bool infeasible = false;
};

/// Tag power optimisation and the key-recovery probability for one trial, averaged over users.
AuthPoint auth_point(const LinkGains& g, double phi, const ScenarioConfig& c)
{
    const auto model = TagSignalModel::from(c);
    const auto opt = optimize_delta(g, phi, model, c.p_fa, c.p_thr);
    AuthPoint p;
    p.psi = opt.psi;
    p.infeasible = opt.infeasible;
    p.p_a = mean_of(opt.p_a_per_user);
    std::vector<double> pk;
    for (std::size_t u = 0; u < g.eve_data.size(); ++u) {
        const auto st = eve_stats(phi, opt.psi, g.eve_data[u], g.eve_an, g.rho_eve, model, c.p_fa);
        pk.push_back(key_recovery_probability(st, c.key_bits));
    }
    p.p_k = mean_of(pk);
    return p;
}

void append_auth_rows(std::vector<SweepRow>& rows, const Block& b, const std::vector<double>& phis,
                      const SweepOptions& o)
{
    const std::size_t n = b.samples.size();
    for (double phi : phis)
        for (Scheme s : kSchemes) {
            std::vector<AuthPoint> pts(n);
            parallel_for(n, o.workers, [&](std::size_t t) {
                const auto& g = s == Scheme::conventional ? b.samples[t].conventional : b.samples[t].proposed;
                pts[t] = auth_point(g, phi, b.config);
            });
            std::vector<double> psi(n), pa(n), pk(n);
            for (std::size_t t = 0; t < n; ++t) {
                psi[t] = pts[t].psi;
                pa[t] = pts[t].p_a;
                pk[t] = pts[t].p_k;
            }
            auto row = base_row("auth", "phi", phi, s, b.config, phi, b.config.delta, n);
            row.delta_opt = mean_of(psi) / phi;
            row.p_a = mean_of(pa);
            row.p_k = mean_of(pk);
            rows.push_back(std::move(row));
        }
}

void require_grid(const std::vector<double>& grid, const char* name, double lo, double hi)
{
    if (grid.empty())
        throw std::invalid_argument(std::string("sweep: ") + name + " grid is empty");
    for (double v : grid)
        if (!std::isfinite(v) || v < lo || v > hi)
            throw std::invalid_argument(std::string("sweep: ") + name + " grid value " + format_number(v) +
                                        " is outside [" + format_number(lo) + ", " + format_number(hi) + "]");
}

std::vector<double> or_default(const std::vector<double>& grid, std::vector<double> fallback)
{
    return grid.empty() ? fallback : grid;
}

struct ResolvedGrids {
    std::vector<double> phi, p_tx, kappa, eps, delta;
};

ResolvedGrids resolve(const SweepOptions& o)
{
    ResolvedGrids g;
    g.phi = or_default(o.phi_grid, default_phi_grid(o.config.n_t));
    g.p_tx = or_default(o.p_tx_grid, {o.config.p_tx_dbm});
    g.kappa = or_default(o.kappa_grid, {10.0, 30.0});
    g.eps = or_default(o.eps_grid, {0.0, 5.0, 10.0});
    g.delta = or_default(o.delta_grid, default_delta_grid(o.delta_max));
    return g;
}

std::string label(const char* prefix, double v)
{
    return std::string(prefix) + format_number(v);
}

}  // namespace

SweepKind parse_sweep_kind(const std::string& name)
{
    if (name == "phi")
        return SweepKind::phi;
    if (name == "kappa")
        return SweepKind::kappa;
    if (name == "eps")
        return SweepKind::eps;
    if (name == "delta")
        return SweepKind::delta;
    if (name == "auth")
        return SweepKind::auth;
    throw std::invalid_argument("unknown sweep kind '" + name + "' (expected phi, kappa, eps, delta or auth)");
}

std::string to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::phi: return "phi";
    case SweepKind::kappa: return "kappa";
    case SweepKind::eps: return "eps";
    case SweepKind::delta: return "delta";
    case SweepKind::auth: return "auth";
    }
    return "unknown";
}

std::vector<double> default_phi_grid(int n_t)
{
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i)
        g.push_back(0.05 * i);
    g.push_back(optimal_phi(n_t));
    g.push_back(0.999);
    std::sort(g.begin(), g.end());
    return g;
}

std::vector<double> default_delta_grid(double delta_max)
{
    if (!(delta_max >= 0.0 && delta_max <= 1.0))
        throw std::invalid_argument("sweep: delta_max must lie in [0, 1]");
    std::vector<double> g;
    const auto steps = static_cast<int>(std::floor(delta_max / 0.005 + 1e-9));
    for (int i = 0; i <= steps; ++i)
        g.push_back(0.005 * i);
    if (delta_max - g.back() > 1e-12)
        g.push_back(delta_max);
    return g;
}

void validate_sweep(const SweepOptions& o)
{
    validate_config(o.config);
    if (o.trials < 2)
        throw std::invalid_argument("sweep: need at least 2 trials");
    if (o.cov_trials < 1)
        throw std::invalid_argument("sweep: cov_trials must be positive");
    const auto g = resolve(o);
    require_grid(g.phi, "phi", 0.0, 1.0);
    require_grid(g.p_tx, "p_tx", -std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
    require_grid(g.kappa, "kappa", -std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
    require_grid(g.eps, "sigma_eps", 0.0, 180.0);
    require_grid(g.delta, "delta", 0.0, 1.0);
    if (o.kind == SweepKind::auth)
        for (double phi : g.phi)
            if (!(phi > 0.0))
                throw std::invalid_argument("sweep: auth sweep needs phi > 0 at every grid point");
}

std::vector<SweepRow> run_sweep(const SweepOptions& o)
{
    validate_sweep(o);
    const auto g = resolve(o);
    std::vector<SweepRow> rows;
    ScenarioConfig c = o.config;
    switch (o.kind) {
    case SweepKind::phi:
        for (double p : g.p_tx) {
            c.p_tx_dbm = p;
            append_rate_rows(rows, make_block(c, o, true), label("phi_ptx", p), "phi", 0.0, g.phi, c.delta,
                             o.trials);
        }
        for (auto& r : rows)
            r.independent_value = r.phi;
        break;
    case SweepKind::kappa:
        for (double k : g.kappa) {
            c.kappa_db = k;
            append_rate_rows(rows, make_block(c, o, true), label("kappa_", k), "kappa_db", k, g.phi, c.delta,
                             o.trials);
        }
        break;
    case SweepKind::eps:
        for (double e : g.eps) {
            c.sigma_eps_deg = e;
            append_rate_rows(rows, make_block(c, o, true), label("eps_", e), "sigma_eps_deg", e, g.phi, c.delta,
                             o.trials);
        }
        break;
    case SweepKind::delta: {
        const auto b = make_block(c, o, true);
        for (double d : g.delta)
            append_rate_rows(rows, b, "delta", "delta", d, {c.phi}, d, o.trials);
        break;
    }
    case SweepKind::auth:
        append_auth_rows(rows, make_block(c, o, false), g.phi, o);
        break;
    }
    return rows;
}

std::vector<std::string> csv_columns()
{
    return {"sweep_id",        "independent_var",
            "independent_value", "scheme",
            "n_t",             "k_users",
            "p_tx_dbm",        "kappa_db",
            "sigma_eps_deg",   "phi",
            "delta",           "mc_user_rate",
            "mc_eve_rate",     "mc_secrecy_rate",
            "mc_stderr",       "mc_sum_secrecy_rate",
            "cf_user_rate",    "cf_eve_rate",
            "cf_secrecy_rate", "cf_sum_secrecy_rate",
            "p_a",             "p_k",
            "delta_opt",       "p_fa",
            "trials",          "seed"};
}

void write_csv(std::ostream& out, const SweepOptions& o, const std::vector<SweepRow>& rows)
{
    const auto g = resolve(o);
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? " " : "") + format_number(v[i]);
        return s;
    };
    out << "# sweep: " << to_string(o.kind) << "\n";
    for (const auto& line : describe_config(o.config))
        out << "# config: " << line << "\n";
    out << "# config: trials = " << o.trials << "\n";
    out << "# config: cov_trials = " << o.cov_trials << "\n";
    out << "# config: cf_geometries = "
        << (o.cf_geometries == 0 ? std::min<std::size_t>(o.trials, 500) : o.cf_geometries) << "\n";
    switch (o.kind) {
    case SweepKind::phi: out << "# config: p_tx_grid = " << join(g.p_tx) << "\n"; break;
    case SweepKind::kappa: out << "# config: kappa_grid = " << join(g.kappa) << "\n"; break;
    case SweepKind::eps: out << "# config: eps_grid = " << join(g.eps) << "\n"; break;
    case SweepKind::delta: out << "# config: delta_grid = " << join(g.delta) << "\n"; break;
    case SweepKind::auth: break;
    }
    if (o.kind != SweepKind::delta)
        out << "# config: phi_grid = " << join(g.phi) << "\n";

    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : rows) {
        out << r.sweep_id << ',' << r.independent_var << ',' << format_number(r.independent_value) << ','
            << to_string(r.scheme) << ',' << r.n_t << ',' << r.k_users << ',' << format_number(r.p_tx_dbm) << ','
            << format_number(r.kappa_db) << ',' << format_number(r.sigma_eps_deg) << ',' << format_number(r.phi)
            << ',' << format_number(r.delta) << ',' << format_field(r.mc_user_rate) << ','
            << format_field(r.mc_eve_rate) << ',' << format_field(r.mc_secrecy_rate) << ','
            << format_field(r.mc_stderr) << ',' << format_field(r.mc_sum_secrecy_rate) << ','
            << format_field(r.cf_user_rate) << ',' << format_field(r.cf_eve_rate) << ','
            << format_field(r.cf_secrecy_rate) << ',' << format_field(r.cf_sum_secrecy_rate) << ','
            << format_field(r.p_a) << ',' << format_field(r.p_k) << ',' << format_field(r.delta_opt) << ','
            << format_number(r.p_fa) << ',' << r.trials << ',' << r.seed << "\n";
    }
}

std::vector<SweepRow> run_sweep_to_file(const SweepOptions& o, const std::string& out_path)
{
    validate_sweep(o);
    namespace fs = std::filesystem;
    const fs::path path(out_path);
    if (path.empty())
        throw std::invalid_argument("sweep: output path is empty");
    if (fs::is_directory(path))
        throw std::invalid_argument("sweep: output path '" + out_path + "' is a directory");
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir))
        throw std::invalid_argument("sweep: output directory '" + dir.string() + "' does not exist");
    {
        std::ofstream probe(path, std::ios::app);
        if (!probe)
            throw std::invalid_argument("sweep: cannot write '" + out_path + "'");
    }
    const auto rows = run_sweep(o);
    std::ostringstream buf;
    write_csv(buf, o, rows);
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << buf.str();
    if (!out)
        throw std::runtime_error("sweep: failed writing '" + out_path + "'");
    return rows;
}

// ---------------------------------------------------------------------------

bool ValidationReport::passed() const
{
    if (!issues.empty())
        return false;
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed || c.skipped; });
}

namespace {

ValidationCheck check_le(std::string name, double measured, double tolerance, std::string detail = {})
{
    ValidationCheck c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.passed = std::isfinite(measured) && measured <= tolerance;
    c.detail = std::move(detail);
    return c;
}

double rel_err(double a, double ref)
{
    return std::abs(a - ref) / std::abs(ref);
}

}  // namespace

ValidationReport run_validation(const ValidateOptions& o)
{
    ValidationReport rep;
    rep.config = o.config;
    const ScenarioConfig& c = o.config;
    rep.issues = config_issues(c);
    {
        ValidationCheck f;
        f.name = "feasibility";
        f.passed = rep.issues.empty();
        f.measured = static_cast<double>(rep.issues.size());
        for (const auto& i : rep.issues)
            f.detail += (f.detail.empty() ? "" : "; ") + i.code + ": " + i.message;
        rep.checks.push_back(f);
    }
    if (!rep.issues.empty())
        return rep;

    // Precoder structure on fresh draws.
    double hv = 0.0, hw = 0.0, gw = 0.0, pw = 0.0, pv = 0.0, cond = 1.0;
    std::size_t singular = 0;
    for (std::size_t t = 0; t < o.exact_draws; ++t) {
        auto geo_rng = trial_rng(c.rng_seed, t, Stream::geometry);
        auto fad_rng = trial_rng(c.rng_seed, t, Stream::fading);
        const auto geo = draw_geometry(c, geo_rng);
        const auto real = draw_channel(geo, c, fad_rng);
        try {
            for (const auto& pre : {conventional_precoders(real.h_matrix),
                                    proposed_precoders(real.h_matrix, real.g_eve)}) {
                const CMatrix m = real.h_matrix.adjoint() * pre.w_matrix;
                for (Eigen::Index i = 0; i < m.rows(); ++i)
                    for (Eigen::Index j = 0; j < m.cols(); ++j)
                        if (i != j)
                            hw = std::max(hw, std::abs(m(i, j)));
                hv = std::max(hv, (real.h_matrix.adjoint() * pre.v_matrix).cwiseAbs().maxCoeff());
                pw = std::max(pw, std::abs(pre.w_matrix.squaredNorm() - 1.0));
                pv = std::max(pv, std::abs(pre.v_matrix.squaredNorm() - 1.0));
                cond = std::max(cond, pre.condition_number);
                if (pre.scheme == Scheme::proposed)
                    gw = std::max(gw, (real.g_eve.adjoint() * pre.w_matrix).cwiseAbs().maxCoeff());
            }
        } catch (const SingularChannelError&) {
            ++singular;
        }
    }
    const std::string draws = std::to_string(o.exact_draws) + " draws";
    rep.checks.push_back(check_le("an_orthogonality", hv, 1e-9, "max |H^H V|, both designs, " + draws));
    rep.checks.push_back(check_le("zf_interference", hw, 1e-9, "max |h_k^H w_u|, k != u, both designs"));
    rep.checks.push_back(check_le("eve_nulling", gw, 1e-9, "max |g_e^H w_u|, proposed design"));
    rep.checks.push_back(check_le("data_power", pw, 1e-10, "max | ||W||_F^2 - 1 |"));
    rep.checks.push_back(check_le("an_power", pv, 1e-10, "max | ||V||_F^2 - 1 |"));
    rep.checks.push_back(check_le("singular_draws", static_cast<double>(singular), 0.0,
                                  "draws rejected as numerically singular"));

    // Closed forms against Monte Carlo at the configured operating point.
    const auto samples = simulate_trials(c, o.trials, o.workers);
    for (const auto& s : samples)
        cond = std::max({cond, s.cond_conventional, s.cond_proposed});
    if (cond > kIllConditionedGram)
        rep.warnings.push_back({"ill_conditioned",
                                "Gram matrix condition number reached " + format_number(cond) + " (threshold " +
                                    format_number(kIllConditionedGram) + "); users are nearly collinear"});

    SweepOptions so;
    so.config = c;
    so.trials = o.trials;
    so.workers = o.workers;
    const auto block = make_block(c, so, true);
    const double eve_tol = o.eve_rate_tolerance >= 0.0 ? o.eve_rate_tolerance : (c.n_t >= 64 ? 0.10 : 0.20);
    for (Scheme s : kSchemes) {
        SweepRow row;
        fill_rates(row, block, s, c.phi, c.delta);
        const std::string tag = to_string(s);
        rep.checks.push_back(check_le("cf_user_rate_" + tag, rel_err(*row.cf_user_rate, *row.mc_user_rate),
                                      o.user_rate_tolerance,
                                      "relative error, closed form vs Monte Carlo user rate"));
        if (row.cf_eve_rate) {
            rep.checks.push_back(check_le("cf_eve_rate_" + tag, rel_err(*row.cf_eve_rate, *row.mc_eve_rate), eve_tol,
                                          "relative error, closed form vs Monte Carlo eavesdropper rate"));
        } else {
            ValidationCheck skip;
            skip.name = "cf_eve_rate_" + tag;
            skip.skipped = true;
            skip.detail = "closed form assumes a perfect eavesdropper angle estimate";
            rep.checks.push_back(skip);
        }
    }

    // Monotonicity: user rate in phi (both methods), authentication probability in psi.
    {
        const auto grid = default_phi_grid(c.n_t);
        double worst = 0.0;
        for (Scheme s : kSchemes) {
            double prev_mc = -1.0, prev_cf = -1.0;
            for (double phi : grid) {
                SweepRow row;
                fill_rates(row, block, s, phi, c.delta);
                worst = std::max({worst, prev_mc - *row.mc_user_rate, prev_cf - *row.cf_user_rate});
                prev_mc = *row.mc_user_rate;
                prev_cf = *row.cf_user_rate;
            }
        }
        rep.checks.push_back(check_le("user_rate_monotone_phi", worst, 0.0, "largest decrease of user rate along phi"));
    }
    {
        const auto& g = samples.front().conventional;
        const auto model = TagSignalModel::from(c);
        double worst = 0.0, prev = 0.0;
        for (int i = 1; i <= 200; ++i) {
            const double psi = std::pow(10.0, -12.0 + 12.0 * i / 200.0);
            const double pa = auth_probability(psi, g.desired[0], g.rho_users[0], model, c.p_fa);
            worst = std::max(worst, prev - pa);
            prev = pa;
        }
        rep.checks.push_back(check_le("auth_monotone_psi", worst, 0.0, "largest decrease of P_A along psi"));
    }
    return rep;
}

std::string to_json(const ValidationReport& r)
{
    using nlohmann::json;
    json j;
    j["passed"] = r.passed();
    json cfg = json::object();
    for (const auto& line : describe_config(r.config)) {
        const auto eq = line.find(" = ");
        cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = cfg;
    auto issues = [](const std::vector<ConfigIssue>& v) {
        json a = json::array();
        for (const auto& i : v)
            a.push_back({{"code", i.code}, {"message", i.message}});
        return a;
    };
    j["issues"] = issues(r.issues);
    j["warnings"] = issues(r.warnings);
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e = {{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped}, {"detail", c.detail}};
        if (!c.skipped) {
            e["measured"] = c.measured;
            e["tolerance"] = c.tolerance;
        }
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2);
}

// ---------------------------------------------------------------------------

std::vector<AuthOptSummary> run_auth_opt(const ScenarioConfig& config, std::size_t trials, int workers)
{
    validate_config(config);
    if (!(config.phi > 0.0))
        throw std::invalid_argument("auth-opt: phi must be positive");
    if (trials < 1)
        throw std::invalid_argument("auth-opt: need at least one trial");
    const auto samples = simulate_trials(config, trials, workers);
    std::vector<AuthOptSummary> out;
    for (Scheme s : kSchemes) {
        std::vector<AuthPoint> pts(trials);
        parallel_for(trials, workers, [&](std::size_t t) {
            pts[t] = auth_point(s == Scheme::conventional ? samples[t].conventional : samples[t].proposed,
                                config.phi, config);
        });
        std::vector<double> psi(trials), pa(trials), pk(trials);
        AuthOptSummary sum;
        sum.scheme = s;
        sum.trials = trials;
        for (std::size_t t = 0; t < trials; ++t) {
            psi[t] = pts[t].psi;
            pa[t] = pts[t].p_a;
            pk[t] = pts[t].p_k;
            sum.infeasible_trials += pts[t].infeasible ? 1 : 0;
        }
        sum.psi = mean_of(psi);
        sum.delta_opt = sum.psi / config.phi;
        sum.p_a = mean_of(pa);
        sum.p_k = mean_of(pk);
        out.push_back(sum);
    }
    return out;
}

std::string to_json(const ScenarioConfig& config, const std::vector<AuthOptSummary>& results)
{
    using nlohmann::json;
    json j;
    j["phi"] = config.phi;
    j["p_fa"] = config.p_fa;
    j["p_thr"] = config.p_thr;
    j["key_bits"] = config.key_bits;
    j["seed"] = config.rng_seed;
    json a = json::array();
    for (const auto& r : results)
        a.push_back({{"scheme", to_string(r.scheme)},
                     {"delta_opt", r.delta_opt},
                     {"psi", r.psi},
                     {"p_a", r.p_a},
                     {"p_k", r.p_k},
                     {"infeasible_trials", r.infeasible_trials},
                     {"trials", r.trials}});
    j["results"] = a;
    return j.dump(2);
}

}  // namespace uavsec
