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

#include "uavsec/precoders.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace uavsec {

std::string to_string(Scheme scheme)
{
    return scheme == Scheme::conventional ? "conventional" : "proposed";
}

namespace {

std::string describe_condition(const char* what, double cond)
{
    std::ostringstream os;
    os << what << ": channel Gram matrix is singular (condition estimate " << cond << ")";
    return os.str();
}

// Largest admissible cond(G^H G): the singular-value tolerance max(N,K)*eps*sigma_max, squared.
double singular_gram_limit(Eigen::Index rows, Eigen::Index cols)
{
    const double tol = static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
    return 1.0 / (tol * tol);
}

}  // namespace

CMatrix zero_forcing_inverse(const CMatrix& g, double& condition)
{
    const CMatrix gram = g.adjoint() * g;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    if (!(lmax > 0.0) || !(condition < singular_gram_limit(g.rows(), g.cols())))
        throw SingularChannelError(describe_condition("zero_forcing_inverse", condition), condition);

    const Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularChannelError(describe_condition("zero_forcing_inverse", condition), condition);
    // G (G^H G)^{-1} = ((G^H G)^{-1} G^H)^H
    const CMatrix g_adj = g.adjoint();
    return llt.solve(g_adj).adjoint();
}

PrecoderPair conventional_precoders(const CMatrix& h)
{
    const Eigen::Index n = h.rows();
    const Eigen::Index k = h.cols();
    if (k < 1 || k >= n)
        throw std::invalid_argument("conventional_precoders: need 1 <= K < N_t");

    PrecoderPair p;
    p.scheme = Scheme::conventional;
    const CMatrix w_zf = zero_forcing_inverse(h, p.condition_number);
    p.w_matrix.resize(n, k);
    const double scale_k = 1.0 / std::sqrt(static_cast<double>(k));
    for (Eigen::Index i = 0; i < k; ++i)
        p.w_matrix.col(i) = w_zf.col(i) * (scale_k / w_zf.col(i).norm());

    // Null space of H^H from a rank-revealing QR of H: trailing columns of the full Q.
    Eigen::ColPivHouseholderQR<CMatrix> qr(h);
    qr.setThreshold(static_cast<double>(std::max(n, k)) * std::numeric_limits<double>::epsilon());
    if (qr.rank() < k)
        throw SingularChannelError(describe_condition("conventional_precoders", p.condition_number),
                                   p.condition_number);
    const CMatrix q = qr.householderQ();
    p.n_an = static_cast<int>(n - k);
    p.v_matrix = q.rightCols(n - k) * (1.0 / std::sqrt(static_cast<double>(p.n_an)));
    return p;
}

PrecoderPair proposed_precoders(const CMatrix& h, const CVector& g_eve)
{
    const Eigen::Index n = h.rows();
    const Eigen::Index k = h.cols();
    if (k < 1 || k + 1 > n)
        throw std::invalid_argument("proposed_precoders: need 1 <= K and K + 1 <= N_t");
    if (g_eve.size() != n)
        throw std::invalid_argument("proposed_precoders: eavesdropper direction has wrong length");

    CMatrix g(n, k + 1);
    g.leftCols(k) = h;
    g.col(k) = g_eve;

    PrecoderPair p;
    p.scheme = Scheme::proposed;
    const CMatrix f = zero_forcing_inverse(g, p.condition_number);
    p.w_matrix.resize(n, k);
    const double scale_k = 1.0 / std::sqrt(static_cast<double>(k));
    for (Eigen::Index i = 0; i < k; ++i)
        p.w_matrix.col(i) = f.col(i) * (scale_k / f.col(i).norm());
    p.n_an = 1;
    p.v_matrix = f.col(k) / f.col(k).norm();
    return p;
}

}  // namespace uavsec
