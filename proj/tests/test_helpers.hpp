// Copyright 2026 The nepec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEPEC_TEST_HELPERS_HPP
#define NEPEC_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "nepec/rng.hpp"
#include "nepec/superop.hpp"

namespace nepec::testing {

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline double gaussian(SampleRng& rng) {
    const double u1 = std::max(rng.uniform(), 1e-300);
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline CMatrix random_complex_matrix(Eigen::Index d, SampleRng& rng) {
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = Complex(gaussian(rng), gaussian(rng));
        }
    }
    return m;
}

inline CMatrix random_unitary(Eigen::Index d, SampleRng& rng) {
    const Eigen::HouseholderQR<CMatrix> qr(random_complex_matrix(d, rng));
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

inline CMatrix random_density(Eigen::Index d, SampleRng& rng) {
    const CMatrix g = random_complex_matrix(d, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

/// Random CPTP channel with `n_kraus` Kraus operators.
inline Superoperator random_channel(Eigen::Index d, int n_kraus, SampleRng& rng) {
    std::vector<CMatrix> raw;
    CMatrix total = CMatrix::Zero(d, d);
    for (int i = 0; i < n_kraus; ++i) {
        raw.push_back(random_complex_matrix(d, rng));
        total += raw.back().adjoint() * raw.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
    const CMatrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<CMatrix> kraus;
    for (const CMatrix& g : raw) {
        kraus.push_back(g * inv_sqrt);
    }
    return kraus_to_superop(kraus);
}

}  // namespace nepec::testing

#endif
