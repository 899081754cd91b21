// Copyright 2026 The udisc Authors
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

#ifndef UDISC_RANDOM_HPP
#define UDISC_RANDOM_HPP

#include <random>

#include "udisc/matcore.hpp"

namespace udisc {

using Rng = std::mt19937_64;

/// rows x cols matrix of independent standard complex Gaussians.
inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

/// G G^dagger / Tr(G G^dagger) with G a dim x rank Ginibre matrix; rank
/// `rank` with probability one.
inline Matrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
    if (dim < 1 || rank < 1 || rank > dim) throw Error(ErrorKind::InvalidArgument, "need 1 <= rank <= dim");
    const Matrix g = ginibre(dim, rank, rng);
    const Matrix w = g * g.adjoint();
    return w / w.trace().real();
}

inline DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
    return validate_density(random_density_matrix(dim, rank, rng));
}

/// Haar-distributed unit vector.
inline Vector random_unit_vector(Eigen::Index dim, Rng& rng) {
    const Vector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phases of R's
/// diagonal divided out).
inline Matrix random_unitary(Eigen::Index dim, Rng& rng) {
    const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace udisc

#endif  // UDISC_RANDOM_HPP
