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

#include <stdexcept>
#include <string>

namespace uavsec {

enum class Scheme { conventional, proposed };

std::string to_string(Scheme scheme);

/// Data precoder W (N_t x K) and artificial-noise precoder V (N_t x N_AN).
/// Both have unit Frobenius norm with equal power per column.
struct PrecoderPair {
    CMatrix w_matrix;
    CMatrix v_matrix;
    int n_an = 0;
    Scheme scheme = Scheme::conventional;
    double condition_number = 1.0;  // 2-norm condition number of the Gram matrix that was inverted
};

/// Gram matrices above this condition number are reported as ill-conditioned.
inline constexpr double kIllConditionedGram = 1.0e4;

inline bool ill_conditioned(const PrecoderPair& p) { return p.condition_number > kIllConditionedGram; }

class SingularChannelError : public std::runtime_error {
public:
    SingularChannelError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate)
    {
    }
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Zero-forcing data precoder plus null-space artificial noise.
PrecoderPair conventional_precoders(const CMatrix& h);

/// Zero-forcing over [H g_e]: data nulls the estimated eavesdropper direction,
/// artificial noise is the extra column, orthogonal to every user.
PrecoderPair proposed_precoders(const CMatrix& h, const CVector& g_eve);

/// G (G^H G)^{-1} through a Cholesky solve; `condition` receives cond(G^H G).
/// Throws SingularChannelError when the Gram matrix is numerically singular.
CMatrix zero_forcing_inverse(const CMatrix& g, double& condition);

}  // namespace uavsec
