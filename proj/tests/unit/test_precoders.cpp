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

#include "catch_amalgamated.hpp"

#include "uavsec/channel.hpp"
#include "uavsec/parallel.hpp"
#include "uavsec/precoders.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace uavsec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ChannelRealization draw(const ScenarioConfig& c, std::uint64_t trial)
{
    Rng grng = trial_rng(c.rng_seed, trial, Stream::geometry);
    const Geometry g = draw_geometry(c, grng);
    Rng frng = trial_rng(c.rng_seed, trial, Stream::fading);
    return draw_channel(g, c, frng);
}

}  // namespace

TEST_CASE("single user reduces to matched filtering", "[precoders]")
{
    Rng rng(3);
    ScenarioConfig c;
    c.k_users = 1;
    const ChannelRealization r = draw(c, 0);
    const CVector h = r.h_matrix.col(0);
    const PrecoderPair p = conventional_precoders(r.h_matrix);
    CHECK((p.w_matrix.col(0) - h / h.norm()).norm() < 1e-12);
    CHECK_THAT(std::norm(h.dot(p.w_matrix.col(0))), WithinRel(h.squaredNorm(), 1e-12));
    CHECK(p.n_an == c.n_t - 1);
}

TEST_CASE("conventional design: orthogonality and power", "[precoders]")
{
    for (int n : {8, 16, 64}) {
        ScenarioConfig c;
        c.n_t = n;
        c.k_users = n == 8 ? 7 : 4;
        for (std::uint64_t t = 0; t < 20; ++t) {
            const ChannelRealization r = draw(c, t);
            const PrecoderPair p = conventional_precoders(r.h_matrix);
            const CMatrix hw = r.h_matrix.adjoint() * p.w_matrix;
            for (int k = 0; k < c.k_users; ++k)
                for (int u = 0; u < c.k_users; ++u) {
                    if (k == u) {
                        CHECK(hw(k, u).real() > 0.0);
                        CHECK(std::abs(hw(k, u).imag()) < 1e-9 * hw(k, u).real());
                    } else {
                        CHECK(std::abs(hw(k, u)) <= 1e-9 * r.h_matrix.col(k).norm());
                    }
                }
            const CMatrix hv = r.h_matrix.adjoint() * p.v_matrix;
            CHECK(hv.cwiseAbs().maxCoeff() <= 1e-9 * r.h_matrix.cwiseAbs().maxCoeff());
            for (int u = 0; u < c.k_users; ++u)
                CHECK(hv.row(u).squaredNorm() <= 1e-16 * n);
            CHECK_THAT(p.w_matrix.squaredNorm(), WithinAbs(1.0, 1e-10));
            CHECK_THAT(p.v_matrix.squaredNorm(), WithinAbs(1.0, 1e-10));
            CHECK(p.n_an == n - c.k_users);
            // V has orthogonal columns of equal power.
            const CMatrix vv = p.v_matrix.adjoint() * p.v_matrix;
            CHECK((vv - CMatrix::Identity(p.n_an, p.n_an) / p.n_an).norm() < 1e-12);
        }
    }
}

TEST_CASE("proposed design nulls the estimated eavesdropper", "[precoders]")
{
    ScenarioConfig c;
    c.sigma_eps_deg = 1.0;
    for (std::uint64_t t = 0; t < 30; ++t) {
        const ChannelRealization r = draw(c, t);
        const PrecoderPair p = proposed_precoders(r.h_matrix, r.g_eve);
        const CVector gw = p.w_matrix.adjoint() * r.g_eve;
        CHECK(gw.cwiseAbs().maxCoeff() <= 1e-9 * r.g_eve.norm());
        const CVector hv = r.h_matrix.adjoint() * p.v_matrix.col(0);
        CHECK(hv.cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(std::abs(r.g_eve.dot(p.v_matrix.col(0))) > 1e-3);
        const CMatrix hw = r.h_matrix.adjoint() * p.w_matrix;
        for (int k = 0; k < c.k_users; ++k)
            for (int u = 0; u < c.k_users; ++u)
                if (k != u)
                    CHECK(std::abs(hw(k, u)) <= 1e-9 * r.h_matrix.col(k).norm());
        CHECK_THAT(p.w_matrix.squaredNorm(), WithinAbs(1.0, 1e-10));
        CHECK_THAT(p.v_matrix.squaredNorm(), WithinAbs(1.0, 1e-10));
        CHECK(p.n_an == 1);
    }
}

TEST_CASE("nulling the eavesdropper costs user gain", "[precoders]")
{
    const int n = 8;
    const CVector h = steering_vector(deg_to_rad(30.0), n, 0.5);
    const CVector g = steering_vector(deg_to_rad(60.0), n, 0.5);
    const PrecoderPair cv = conventional_precoders(h);
    const PrecoderPair pp = proposed_precoders(h, g);
    const double gain_cv = std::norm(h.dot(cv.w_matrix.col(0)));
    const double gain_pp = std::norm(h.dot(pp.w_matrix.col(0)));
    CHECK_THAT(gain_cv, WithinRel(h.squaredNorm(), 1e-12));
    CHECK(gain_pp < gain_cv);
    // With one user the data beam is h projected off g.
    const double projected = h.squaredNorm() - std::norm(g.dot(h)) / g.squaredNorm();
    CHECK_THAT(gain_pp, WithinRel(projected, 1e-10));
}

TEST_CASE("mean user gain is lower under the proposed design", "[precoders]")
{
    ScenarioConfig c;
    std::vector<double> diff;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const ChannelRealization r = draw(c, t);
        const PrecoderPair cv = conventional_precoders(r.h_matrix);
        const PrecoderPair pp = proposed_precoders(r.h_matrix, r.g_eve);
        for (int u = 0; u < c.k_users; ++u)
            diff.push_back(std::norm(r.h_matrix.col(u).dot(cv.w_matrix.col(u))) -
                           std::norm(r.h_matrix.col(u).dot(pp.w_matrix.col(u))));
    }
    CHECK(sample_stats(diff).mean >= 0.0);
}

TEST_CASE("precoders are deterministic", "[precoders]")
{
    ScenarioConfig c;
    const ChannelRealization r = draw(c, 5);
    const PrecoderPair a = conventional_precoders(r.h_matrix);
    const PrecoderPair b = conventional_precoders(r.h_matrix);
    CHECK(a.w_matrix == b.w_matrix);
    CHECK(a.v_matrix == b.v_matrix);
    const PrecoderPair pa = proposed_precoders(r.h_matrix, r.g_eve);
    const PrecoderPair pb = proposed_precoders(r.h_matrix, r.g_eve);
    CHECK(pa.w_matrix == pb.w_matrix);
    CHECK(pa.v_matrix == pb.v_matrix);
}

TEST_CASE("singular channels are rejected", "[precoders]")
{
    const CVector a = steering_vector(0.4, 8, 0.5);
    CMatrix h(8, 2);
    h.col(0) = a;
    h.col(1) = a;
    try {
        conventional_precoders(h);
        FAIL("expected SingularChannelError");
    } catch (const SingularChannelError& e) {
        CHECK(e.condition_estimate() > 1e20);
    }
    CMatrix one(8, 1);
    one.col(0) = a;
    CHECK_THROWS_AS(proposed_precoders(one, Complex(0.0, 1.0) * a), SingularChannelError);
    CHECK_THROWS_AS(conventional_precoders(CMatrix::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("near-collinear users are flagged", "[precoders]")
{
    CMatrix h(16, 2);
    h.col(0) = steering_vector(1.0, 16, 0.5);
    h.col(1) = steering_vector(1.0 + 1e-3, 16, 0.5);
    const PrecoderPair p = conventional_precoders(h);
    CHECK(ill_conditioned(p));
    CHECK(p.condition_number > kIllConditionedGram);
}
