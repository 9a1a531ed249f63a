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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace uavsec {

/// Keyed one-way tag t = f(s, key): HMAC-SHA256 in counter mode expanded to
/// zero-mean, unit-power complex symbols.
///
/// `gaussian` tags are CN(0,1) (Box-Muller on hash output); `hash_derived` tags
/// are constant-modulus QPSK symbols.
std::vector<std::complex<double>> generate_tag(std::span<const std::complex<double>> message_symbols,
                                               std::span<const std::uint8_t> key, int l_tag,
                                               TagKind kind = TagKind::gaussian);

std::vector<std::complex<double>> generate_tag(std::span<const std::complex<double>> message_symbols,
                                               std::uint64_t key, int l_tag, TagKind kind = TagKind::gaussian);

}  // namespace uavsec
