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

#include "uavsec/tag.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

using namespace uavsec;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::complex<double>> message(int n, double offset = 0.0)
{
    std::vector<std::complex<double>> s;
    for (int i = 0; i < n; ++i)
        s.emplace_back(std::cos(i + offset), std::sin(0.5 * i));
    return s;
}

double correlation(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::real(std::conj(a[i]) * b[i]);
    return acc / static_cast<double>(a.size());
}

double power(const std::vector<std::complex<double>>& t)
{
    double acc = 0.0;
    for (const auto& x : t)
        acc += std::norm(x);
    return acc / static_cast<double>(t.size());
}

}  // namespace

TEST_CASE("tags are deterministic", "[tag]")
{
    const auto s = message(32);
    CHECK(generate_tag(s, 0x1234u, 1024) == generate_tag(s, 0x1234u, 1024));
    const std::array<std::uint8_t, 4> key{1, 2, 3, 4};
    CHECK(generate_tag(s, key, 77) == generate_tag(s, key, 77));
    CHECK(generate_tag(s, 0x1234u, 1024).size() == 1024);
    // A longer tag extends the same stream.
    const auto short_tag = generate_tag(s, 9u, 10);
    const auto long_tag = generate_tag(s, 9u, 20);
    CHECK(std::equal(short_tag.begin(), short_tag.end(), long_tag.begin()));
}

TEST_CASE("tags depend on key and message", "[tag]")
{
    const auto s = message(32);
    CHECK(generate_tag(s, 1u, 64) != generate_tag(s, 2u, 64));
    CHECK(generate_tag(s, 1u, 64) != generate_tag(message(32, 1e-9), 1u, 64));
}

TEST_CASE("tag power and independence", "[tag]")
{
    const auto s = message(16);
    const double p0 = power(generate_tag(s, 0u, 1024));
    CHECK(p0 >= 0.9);
    CHECK(p0 <= 1.1);

    // ||t||^2/L_t of a CN(0,1) tag has standard deviation 1/sqrt(L_t), so about
    // 0.16% of tags fall outside [0.9, 1.1]; check the coverage instead of each tag.
    double worst_corr = 0.0;
    double mean_power = 0.0;
    int inside = 0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto t1 = generate_tag(s, 2 * k, 1024);
        const auto t2 = generate_tag(s, 2 * k + 1, 1024);
        const double p = power(t1);
        inside += p >= 0.9 && p <= 1.1;
        mean_power += p / 1000.0;
        worst_corr = std::max(worst_corr, std::abs(correlation(t1, t2)));
    }
    CHECK(inside >= 990);
    CHECK(worst_corr <= 0.1);
    CHECK_THAT(mean_power, WithinAbs(1.0, 0.01));
}

TEST_CASE("gaussian tags have circular unit-variance entries", "[tag]")
{
    const auto t = generate_tag(message(8), 42u, 1 << 16);
    double re2 = 0.0, im2 = 0.0, re = 0.0, cross = 0.0;
    for (const auto& x : t) {
        re += x.real();
        re2 += x.real() * x.real();
        im2 += x.imag() * x.imag();
        cross += x.real() * x.imag();
    }
    const double n = static_cast<double>(t.size());
    CHECK_THAT(re / n, WithinAbs(0.0, 0.02));
    CHECK_THAT(re2 / n, WithinAbs(0.5, 0.02));
    CHECK_THAT(im2 / n, WithinAbs(0.5, 0.02));
    CHECK_THAT(cross / n, WithinAbs(0.0, 0.02));
}

TEST_CASE("hash-derived tags are constant modulus", "[tag]")
{
    const auto t = generate_tag(message(8), 5u, 512, TagKind::hash_derived);
    for (const auto& x : t) {
        CHECK_THAT(std::abs(x), WithinAbs(1.0, 1e-15));
        CHECK_THAT(std::abs(x.real()), WithinAbs(std::abs(x.imag()), 1e-15));
    }
    CHECK_THROWS(generate_tag(message(8), 5u, 0));
}
