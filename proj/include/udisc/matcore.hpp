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

#ifndef UDISC_MATCORE_HPP
#define UDISC_MATCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "udisc/errors.hpp"

namespace udisc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kRelativeRankTol = 1e-10;

/// Largest entry-wise modulus of M - M^dagger.
inline double hermitian_defect(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest entry-wise modulus of basis^dagger basis - I.
inline double orthonormality_defect(const Matrix& basis) {
    if (basis.cols() == 0) return 0.0;
    const Matrix gram = basis.adjoint() * basis;
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

/// Unit-trace positive semidefinite Hermitian matrix with its spectral
/// decomposition cached (eigenvalues descending, eigenvectors as columns).
/// Instances only come out of validate_density().
class DensityMatrix {
public:
    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    const RealVector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }
    double max_eigenvalue() const { return eigenvalues_.size() ? eigenvalues_(0) : 0.0; }

    /// Principal square root; eigenvalues below zero are clamped first.
    Matrix sqrt() const {
        const RealVector roots = eigenvalues_.cwiseMax(0.0).cwiseSqrt();
        return eigenvectors_ * roots.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
    }

    Matrix reconstruct() const {
        return eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
    }

private:
    DensityMatrix(Matrix m, RealVector values, Matrix vectors)
        : matrix_(std::move(m)), eigenvalues_(std::move(values)), eigenvectors_(std::move(vectors)) {}

    friend DensityMatrix validate_density(const Matrix& raw, double tol);

    Matrix matrix_;
    RealVector eigenvalues_;
    Matrix eigenvectors_;
};

/// Validates a candidate density operator.
///
/// The Hermitian part is taken and the trace renormalised to exactly one
/// when the input is within `tol` of satisfying both; beyond that the
/// corresponding error is raised.
inline DensityMatrix validate_density(const Matrix& raw, double tol = kHermitianTol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (raw.rows() != raw.cols() || raw.rows() == 0) {
        std::ostringstream os;
        os << "density matrix must be square and non-empty, got " << raw.rows() << "x" << raw.cols();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (!raw.allFinite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");

    const double asym = hermitian_defect(raw);
    if (asym > tol) {
        std::ostringstream os;
        os << "max |M - M^dagger| = " << asym << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    Matrix herm = (raw + raw.adjoint()) / 2.0;

    const double trace = herm.trace().real();
    if (std::abs(trace - 1.0) > tol) {
        std::ostringstream os;
        os << "trace " << trace << " differs from 1 by more than " << tol;
        throw Error(ErrorKind::BadTrace, os.str());
    }
    herm /= trace;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
    if (eig.info() != Eigen::Success) throw Error(ErrorKind::NotHermitian, "eigendecomposition failed");
    const RealVector& ascending = eig.eigenvalues();
    if (ascending(0) < -tol) {
        std::ostringstream os;
        os << "eigenvalue " << ascending(0) << " below -" << tol;
        throw Error(ErrorKind::NotPositive, os.str());
    }

    const Eigen::Index n = herm.rows();
    RealVector values(n);
    Matrix vectors(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values(i) = ascending(n - 1 - i);
        vectors.col(i) = eig.eigenvectors().col(n - 1 - i);
    }
    return DensityMatrix(std::move(herm), std::move(values), std::move(vectors));
}

/// Orthonormal basis (as matrix columns) of a subspace of C^n. The rank may
/// be zero, in which case the basis is an n x 0 matrix.
class Subspace {
public:
    Subspace() = default;

    /// Takes ownership of `basis`; its columns must be orthonormal.
    explicit Subspace(Matrix basis, double tol = kHermitianTol) : basis_(std::move(basis)) {
        if (basis_.cols() > basis_.rows())
            throw Error(ErrorKind::NotOrthonormal, "rank exceeds ambient dimension");
        const double defect = orthonormality_defect(basis_);
        if (defect > tol) {
            std::ostringstream os;
            os << "basis columns deviate from orthonormal by " << defect;
            throw Error(ErrorKind::NotOrthonormal, os.str());
        }
    }

    static Subspace zero(Eigen::Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

    Eigen::Index ambient_dim() const { return basis_.rows(); }
    Eigen::Index rank() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

private:
    Matrix basis_;
};

/// Prior probabilities of the two hypotheses.
class Priors {
public:
    Priors() = default;

    static Priors make(double p0, double p1) {
        if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12) {
            std::ostringstream os;
            os.precision(17);
            os << "priors (" << p0 << ", " << p1 << ") must be non-negative and sum to 1";
            throw Error(ErrorKind::BadPriors, os.str());
        }
        Priors p;
        p.p0_ = p0;
        p.p1_ = p1;
        return p;
    }

    static Priors equal() { return make(0.5, 0.5); }

    double p0() const { return p0_; }
    double p1() const { return p1_; }
    double operator[](int b) const { return b == 0 ? p0_ : p1_; }
    double min() const { return std::min(p0_, p1_); }
    double max() const { return std::max(p0_, p1_); }
    Priors swapped() const { return make(p1_, p0_); }

private:
    double p0_ = 0.5;
    double p1_ = 0.5;
};

struct SupportKernel {
    Subspace support;
    Subspace kernel;
};

/// Splits C^n into the support of rho (eigenvalues above the threshold) and
/// its kernel. The default threshold is relative to the largest eigenvalue.
inline SupportKernel support_kernel(const DensityMatrix& rho, std::optional<double> rank_tol = std::nullopt) {
    const double threshold = rank_tol.value_or(kRelativeRankTol * rho.max_eigenvalue());
    if (!(threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be positive");
    const Eigen::Index n = rho.dim();
    Eigen::Index rank = 0;
    while (rank < n && rho.eigenvalues()(rank) > threshold) ++rank;
    // Eigenvalues are descending, so the support is a leading block of columns.
    return {Subspace(rho.eigenvectors().leftCols(rank)), Subspace(rho.eigenvectors().rightCols(n - rank))};
}

inline Matrix projector(const Subspace& s) {
    const Eigen::Index n = s.ambient_dim();
    if (s.rank() == 0) return Matrix::Zero(n, n);
    return s.basis() * s.basis().adjoint();
}

/// Smallest eigenvalue of the Hermitian part of h.
inline double min_eigenvalue(const Matrix& h, double tol = kHermitianTol) {
    if (h.rows() != h.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
    if (h.size() == 0) return 0.0;
    const double asym = hermitian_defect(h);
    if (asym > tol) {
        std::ostringstream os;
        os << "max |H - H^dagger| = " << asym << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    const Matrix herm = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

inline double max_eigenvalue(const Matrix& h, double tol = kHermitianTol) {
    return -min_eigenvalue(-h, tol);
}

namespace detail {

/// Tr|sqrt(rho0) sqrt(rho1)| before clamping to [0, 1].
inline double fidelity_unclamped(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    // F is the trace norm of A0^dagger A1 where rho_b = A_b A_b^dagger. Using
    // support-only factors keeps eigenvalue noise at the 1e-16 level out of
    // the square roots, where it would grow to 1e-8.
    const auto factor = [](const DensityMatrix& rho) -> Matrix {
        const double cutoff = kRelativeRankTol * std::max(rho.max_eigenvalue(), 0.0);
        Eigen::Index rank = 0;
        while (rank < rho.dim() && rho.eigenvalues()(rank) > cutoff) ++rank;
        const RealVector roots = rho.eigenvalues().head(rank).cwiseSqrt();
        return rho.eigenvectors().leftCols(rank) * roots.cast<Complex>().asDiagonal();
    };
    const Matrix a0 = factor(rho0);
    const Matrix a1 = factor(rho1);
    if (a0.cols() == 0 || a1.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a0.adjoint() * a1);
    return svd.singularValues().sum();
}

}  // namespace detail

/// Fidelity Tr|sqrt(rho0) sqrt(rho1)|, clamped to [0, 1].
inline double fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.dim() != rho1.dim()) throw Error(ErrorKind::DimensionMismatch, "fidelity of states with different dimensions");
    return std::clamp(detail::fidelity_unclamped(rho0, rho1), 0.0, 1.0);
}

/// Density matrix |psi><psi| of a unit vector.
inline DensityMatrix pure_density(const Vector& psi, double tol = kHermitianTol) {
    return validate_density(psi * psi.adjoint(), tol);
}

}  // namespace udisc

#endif  // UDISC_MATCORE_HPP
