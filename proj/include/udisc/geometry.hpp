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

#ifndef UDISC_GEOMETRY_HPP
#define UDISC_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "udisc/matcore.hpp"

namespace udisc {

/// Singular values of K0^dagger K1 above this are treated as a shared kernel
/// direction (angle below roughly 1e-4).
inline constexpr double kIntersectionCosine = 1.0 - 5e-9;

/// A pair of states to be told apart, with their priors and kernels.
///
/// When `reduced` is set the states are expressed in an orthonormal basis of
/// the span of their supports; `embedding` maps that basis back into the
/// original space (original_dim x dim isometry).
struct DiscriminationProblem {
    DensityMatrix rho0;
    DensityMatrix rho1;
    Priors priors;
    Subspace kernel0;
    Subspace kernel1;
    bool reduced = false;
    Matrix embedding;

    Eigen::Index dim() const { return rho0.dim(); }
    Eigen::Index original_dim() const { return embedding.rows(); }
    Eigen::Index r0() const { return kernel0.rank(); }
    Eigen::Index r1() const { return kernel1.rank(); }
    const DensityMatrix& rho(int b) const { return b == 0 ? rho0 : rho1; }
    const Subspace& kernel(int b) const { return b == 0 ? kernel0 : kernel1; }
};

/// Paired orthonormal kernel bases with <k0^j|k1^i> = delta_ij cos(theta_j).
///
/// Role ordering: index 0 always refers to the larger kernel. `swapped` is
/// set when that required exchanging the caller's arguments, so basis0 then
/// spans the caller's second kernel.
struct CanonicalPairing {
    Eigen::Index r0 = 0;
    Eigen::Index r1 = 0;
    bool swapped = false;
    std::vector<double> angles;   // ascending, length r0; pi/2 beyond r1
    std::vector<double> cosines;  // cos(theta_j) for j < r1, straight from the SVD
    Subspace basis0;
    Subspace basis1;
};

/// Canonical angles between two subspaces from the SVD of X0^dagger X1.
inline CanonicalPairing canonical_pairing(const Subspace& k0, const Subspace& k1) {
    if (k0.ambient_dim() != k1.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "subspaces live in different spaces");

    CanonicalPairing out;
    out.swapped = k0.rank() < k1.rank();
    const Subspace& longer = out.swapped ? k1 : k0;
    const Subspace& shorter = out.swapped ? k0 : k1;
    out.r0 = longer.rank();
    out.r1 = shorter.rank();
    const Eigen::Index n = k0.ambient_dim();

    if (out.r1 == 0) {
        out.angles.assign(static_cast<std::size_t>(out.r0), std::numbers::pi / 2);
        out.basis0 = longer;
        out.basis1 = Subspace::zero(n);
        return out;
    }

    const Matrix cross = longer.basis().adjoint() * shorter.basis();
    Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();

    // acos loses half the digits near 1, so small angles come from the sines:
    // the singular values of the part of K_shorter outside K_longer.
    const Matrix outside = shorter.basis() - longer.basis() * cross;
    const RealVector sines = Eigen::JacobiSVD<Matrix>(outside).singularValues();

    std::vector<double> cos_raw(static_cast<std::size_t>(out.r1));
    std::vector<double> theta_raw(cos_raw.size());
    for (std::size_t j = 0; j < cos_raw.size(); ++j) {
        const auto k = static_cast<Eigen::Index>(j);
        cos_raw[j] = std::clamp(sv(k), 0.0, 1.0);
        const double sine = std::clamp(sines(out.r1 - 1 - k), 0.0, 1.0);
        theta_raw[j] = sine < std::numbers::sqrt2 / 2 ? std::asin(sine) : std::acos(cos_raw[j]);
    }
    std::vector<Eigen::Index> order(cos_raw.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return theta_raw[static_cast<std::size_t>(a)] < theta_raw[static_cast<std::size_t>(b)];
    });

    Matrix u(out.r0, out.r0);
    Matrix v(out.r1, out.r1);
    for (Eigen::Index j = 0; j < out.r1; ++j) {
        u.col(j) = svd.matrixU().col(order[static_cast<std::size_t>(j)]);
        v.col(j) = svd.matrixV().col(order[static_cast<std::size_t>(j)]);
        out.angles.push_back(theta_raw[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
        out.cosines.push_back(cos_raw[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
    }
    // Columns beyond r1 complete the longer kernel and are orthogonal to all of K1.
    for (Eigen::Index j = out.r1; j < out.r0; ++j) {
        u.col(j) = svd.matrixU().col(j);
        out.angles.push_back(std::numbers::pi / 2);
    }
    out.basis0 = Subspace(longer.basis() * u);
    out.basis1 = Subspace(shorter.basis() * v);
    return out;
}

namespace detail {

inline Matrix orthogonal_complement(const Matrix& w, Eigen::Index n) {
    const Matrix p = Matrix::Identity(n, n) - w * w.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(p);
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (eig.eigenvalues()(i) > 0.5) ++keep;
    return eig.eigenvectors().rightCols(keep);
}

inline double quadratic_form(const Matrix& m, const auto& v) {
    return (v.adjoint() * m * v).value().real();
}

}  // namespace detail

/// Wraps two states without any reduction; mostly useful for tests and for
/// feeding the oracle's precondition checks.
inline DiscriminationProblem make_unreduced_problem(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                                    const Priors& priors) {
    if (rho0.dim() != rho1.dim()) throw Error(ErrorKind::DimensionMismatch, "states have different dimensions");
    return {rho0, rho1, priors, support_kernel(rho0).kernel, support_kernel(rho1).kernel, false,
            Matrix::Identity(rho0.dim(), rho0.dim())};
}

/// Restricts the pair to the span of their supports. Directions shared by
/// both kernels are discarded; nothing is renormalised beyond numerical
/// residue.
inline DiscriminationProblem build_problem(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                           const Priors& priors) {
    DiscriminationProblem raw = make_unreduced_problem(rho0, rho1, priors);
    const Eigen::Index n = raw.dim();

    Matrix shared(n, 0);
    if (raw.r0() > 0 && raw.r1() > 0) {
        const Matrix cross = raw.kernel0.basis().adjoint() * raw.kernel1.basis();
        Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU);
        Eigen::Index count = 0;
        while (count < svd.singularValues().size() && svd.singularValues()(count) > kIntersectionCosine) ++count;
        shared = raw.kernel0.basis() * svd.matrixU().leftCols(count);
    }
    if (shared.cols() == 0) {
        raw.reduced = true;
        return raw;
    }

    const Matrix span = detail::orthogonal_complement(shared, n);
    const DensityMatrix red0 = validate_density(span.adjoint() * rho0.matrix() * span, 1e-6);
    const DensityMatrix red1 = validate_density(span.adjoint() * rho1.matrix() * span, 1e-6);
    return {red0, red1, priors, support_kernel(red0).kernel, support_kernel(red1).kernel, true, span};
}

struct KernelWeights {
    double a0 = 0.0;
    double a1 = 0.0;
};

/// Per-pair success weights A0_j = q0 <k1^j|s0|k1^j>, A1_j = q1 <k0^j|s1|k0^j>
/// where (s_b, q_b) are the states and priors in the pairing's role order.
inline std::vector<KernelWeights> kernel_overlap_weights(const DiscriminationProblem& problem,
                                                         const CanonicalPairing& pairing) {
    const int role0 = pairing.swapped ? 1 : 0;
    const int role1 = 1 - role0;
    if (pairing.basis0.ambient_dim() != problem.dim() || pairing.basis1.ambient_dim() != problem.dim() ||
        pairing.r0 != problem.kernel(role0).rank() || pairing.r1 != problem.kernel(role1).rank())
        throw Error(ErrorKind::PairingMismatch, "pairing was not built from this problem's kernels");

    const Matrix& s0 = problem.rho(role0).matrix();
    const Matrix& s1 = problem.rho(role1).matrix();
    const double q0 = problem.priors[role0];
    const double q1 = problem.priors[role1];

    std::vector<KernelWeights> out(static_cast<std::size_t>(pairing.r0));
    for (Eigen::Index j = 0; j < pairing.r0; ++j) {
        auto& w = out[static_cast<std::size_t>(j)];
        if (j < pairing.r1) w.a0 = std::max(0.0, q0 * detail::quadratic_form(s0, pairing.basis1.basis().col(j)));
        w.a1 = std::max(0.0, q1 * detail::quadratic_form(s1, pairing.basis0.basis().col(j)));
    }
    return out;
}

}  // namespace udisc

#endif  // UDISC_GEOMETRY_HPP
