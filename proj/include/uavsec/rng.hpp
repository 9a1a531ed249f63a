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

#include <cstdint>
#include <random>

namespace uavsec {

using Rng = std::mt19937_64;

/// Independent random streams used inside one Monte Carlo trial.
enum class Stream : std::uint32_t {
    geometry = 1,
    fading = 2,
    eve_user = 3,
    covariance = 4,
    tag = 5,
};

/// Engine whose state depends only on (seed, trial, stream), so results do not
/// depend on evaluation order or the number of worker threads.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

}  // namespace uavsec
