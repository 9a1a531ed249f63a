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

namespace uavsec {

/// Standard normal density.
double normal_pdf(double z);

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double z);

/// log Phi(z) without underflow for very negative z and without losing the
/// tiny deficit 1 - Phi(z) for large positive z.
double normal_log_cdf(double z);

/// Phi^{-1}(p) for p in (0, 1).
double normal_quantile(double p);

}  // namespace uavsec
