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

#ifndef UDISC_POVM_HPP
#define UDISC_POVM_HPP

#include <algorithm>

#include "udisc/geometry.hpp"

namespace udisc {

inline constexpr double kPovmTol = 1e-9;

/// {E0, E1, E?}: conclusive "state 0", conclusive "state 1", inconclusive.
struct ThreeOutcomePOVM {
    Matrix e0;
    Matrix e1;
    Matrix e_fail;

    static ThreeOutcomePOVM from_conclusive(Matrix e0, Matrix e1) {
        const Eigen::Index n = e0.rows();
        Matrix fail = Matrix::Identity(n, n) - e0 - e1;
        return {std::move(e0), std::move(e1), std::move(fail)};
    }

    static ThreeOutcomePOVM inconclusive(Eigen::Index n) {
        return from_conclusive(Matrix::Zero(n, n), Matrix::Zero(n, n));
    }

    ThreeOutcomePOVM swapped() const { return {e1, e0, e_fail}; }
};

/// p0 Tr(rho0 E0) + p1 Tr(rho1 E1).
inline double success_probability(const DiscriminationProblem& problem, const ThreeOutcomePOVM& povm) {
    return problem.priors.p0() * (problem.rho0.matrix() * povm.e0).trace().real() +
           problem.priors.p1() * (problem.rho1.matrix() * povm.e1).trace().real();
}

/// Numbers behind the validity of a POVM for a given problem.
struct PovmDiagnostics {
    double min_eig_e0 = 0.0;
    double min_eig_e1 = 0.0;
    double min_eig_fail = 0.0;
    double hermitian_defect = 0.0;
    double completeness_defect = 0.0;
    double error_rate0 = 0.0;  // Tr(rho0 E1)
    double error_rate1 = 0.0;  // Tr(rho1 E0)

    bool valid(double tol = kPovmTol) const {
        return hermitian_defect <= tol && min_eig_e0 >= -tol && min_eig_e1 >= -tol && min_eig_fail >= -tol &&
               completeness_defect <= tol && std::abs(error_rate0) <= tol && std::abs(error_rate1) <= tol;
    }
};

inline PovmDiagnostics diagnose_povm(const DiscriminationProblem& problem, const ThreeOutcomePOVM& povm) {
    const Eigen::Index n = problem.dim();
    if (povm.e0.rows() != n || povm.e1.rows() != n || povm.e_fail.rows() != n)
        throw Error(ErrorKind::DimensionMismatch, "POVM and problem dimensions differ");
    PovmDiagnostics d;
    d.hermitian_defect =
        std::max({hermitian_defect(povm.e0), hermitian_defect(povm.e1), hermitian_defect(povm.e_fail)});
    // Eigenvalues of the Hermitian parts; the defect above is reported separately.
    const double loose = std::max(1.0, d.hermitian_defect * 2);
    d.min_eig_e0 = min_eigenvalue(povm.e0, loose);
    d.min_eig_e1 = min_eigenvalue(povm.e1, loose);
    d.min_eig_fail = min_eigenvalue(povm.e_fail, loose);
    d.completeness_defect =
        (povm.e0 + povm.e1 + povm.e_fail - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    d.error_rate0 = (problem.rho0.matrix() * povm.e1).trace().real();
    d.error_rate1 = (problem.rho1.matrix() * povm.e0).trace().real();
    return d;
}

/// Maps a POVM of a reduced problem back into the original space; the
/// discarded directions go to the inconclusive outcome.
inline ThreeOutcomePOVM lift_povm(const DiscriminationProblem& problem, const ThreeOutcomePOVM& povm) {
    const Matrix& v = problem.embedding;
    return ThreeOutcomePOVM::from_conclusive(v * povm.e0 * v.adjoint(), v * povm.e1 * v.adjoint());
}

}  // namespace udisc

#endif  // UDISC_POVM_HPP
