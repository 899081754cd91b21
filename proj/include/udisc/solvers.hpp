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

#ifndef UDISC_SOLVERS_HPP
#define UDISC_SOLVERS_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "udisc/povm.hpp"

namespace udisc {

/// Kernel cosines at or below this count as orthogonal.
inline constexpr double kOrthogonalCosine = 1e-9;
/// Bounds closer than this are reported as coinciding.
inline constexpr double kExactGap = 1e-9;

enum class Branch { Interior, Saturated };

enum class Method { OrthogonalKernels, OneDimKernels, PureStates, GeneralBounds };

constexpr std::string_view to_string(Branch b) {
    return b == Branch::Interior ? "Interior" : "Saturated";
}

constexpr std::string_view to_string(Method m) {
    switch (m) {
        case Method::OrthogonalKernels: return "OrthogonalKernels";
        case Method::OneDimKernels: return "OneDimKernels";
        case Method::PureStates: return "PureStates";
        case Method::GeneralBounds: return "GeneralBounds";
    }
    return "Unknown";
}

/// Optimal weights for one pair of kernel vectors: E0 gets alpha |k1><k1|,
/// E1 gets beta |k0><k0|.
struct Rank1Solution {
    double alpha = 0.0;
    double beta = 0.0;
    double p_success = 0.0;
    Branch branch = Branch::Saturated;
};

struct DiscriminationReport {
    double p_lower = 0.0;
    double p_upper = 0.0;
    bool exact = false;
    ThreeOutcomePOVM povm;
    Method method = Method::GeneralBounds;
    double fidelity = 0.0;
    std::vector<double> angles;  // canonical angles in role order
    bool swapped = false;

    double gap() const { return p_upper - p_lower; }
};

/// Maximises alpha*A0 + beta*A1 subject to I - alpha|k1><k1| - beta|k0><k0| >= 0
/// where |<k0|k1>| = cos_theta.
inline Rank1Solution solve_1d(double a0, double a1, double cos_theta) {
    if (!(cos_theta >= -1e-12 && cos_theta <= 1.0 + 1e-12))
        throw Error(ErrorKind::BadAngle, "cos(theta) = " + std::to_string(cos_theta) + " outside [0, 1]");
    if (!(a0 >= -1e-12) || !(a1 >= -1e-12))
        throw Error(ErrorKind::InvalidArgument, "kernel weights must be non-negative");
    const double c = std::clamp(cos_theta, 0.0, 1.0);
    a0 = std::max(a0, 0.0);
    a1 = std::max(a1, 0.0);

    if (a0 == 0.0 && a1 == 0.0) return {0.0, 0.0, 0.0, Branch::Saturated};
    if (c <= 1e-12) return {1.0, 1.0, a0 + a1, Branch::Interior};

    const double a_min = std::min(a0, a1);
    const double a_max = std::max(a0, a1);
    if (a_min > 0.0 && c < std::sqrt(a_min / a_max)) {
        const double sin2 = (1.0 - c) * (1.0 + c);
        const double alpha = std::clamp((1.0 - std::sqrt(a1 / a0) * c) / sin2, 0.0, 1.0);
        const double beta = std::clamp((1.0 - std::sqrt(a0 / a1) * c) / sin2, 0.0, 1.0);
        return {alpha, beta, alpha * a0 + beta * a1, Branch::Interior};
    }
    // Ties put the full weight on E0.
    if (a0 >= a1) return {1.0, 0.0, a0, Branch::Saturated};
    return {0.0, 1.0, a1, Branch::Saturated};
}

/// Pure-state upper bound evaluated at overlap F; also the closed form for
/// two pure states with |<psi0|psi1>| = F.
inline double upper_bound_from_fidelity(double f, const Priors& priors) {
    const double p_min = priors.min();
    const double p_max = priors.max();
    if (f < std::sqrt(p_min / p_max)) return 1.0 - 2.0 * std::sqrt(priors.p0() * priors.p1()) * f;
    return p_max * (1.0 - f * f);
}

inline double upper_bound(const DiscriminationProblem& problem) {
    return upper_bound_from_fidelity(fidelity(problem.rho0, problem.rho1), problem.priors);
}

/// Exact optimum when the kernels are mutually orthogonal (either may be empty).
inline DiscriminationReport solve_orthogonal_kernels(const DiscriminationProblem& problem) {
    const CanonicalPairing pairing = canonical_pairing(problem.kernel0, problem.kernel1);
    for (double c : pairing.cosines)
        if (c > kOrthogonalCosine)
            throw Error(ErrorKind::NotApplicable, "kernels are not orthogonal (cos = " + std::to_string(c) + ")");

    const Matrix k0 = projector(problem.kernel0);
    const Matrix k1 = projector(problem.kernel1);
    DiscriminationReport r;
    r.povm = ThreeOutcomePOVM::from_conclusive(k1, k0);
    r.p_lower = success_probability(problem, r.povm);
    r.p_upper = r.p_lower;
    r.exact = true;
    r.method = Method::OrthogonalKernels;
    r.fidelity = fidelity(problem.rho0, problem.rho1);
    r.angles = pairing.angles;
    r.swapped = pairing.swapped;
    return r;
}

struct LowerBound {
    double p_lower = 0.0;
    ThreeOutcomePOVM povm;
    CanonicalPairing pairing;
    std::vector<Rank1Solution> pairs;  // one per paired direction j < r1
};

/// Pairs the kernels by canonical angles, solves each pair as a 1-D kernel
/// problem and gives the unpaired directions of the longer kernel full weight.
inline LowerBound lower_bound_povm(const DiscriminationProblem& problem) {
    LowerBound out;
    out.pairing = canonical_pairing(problem.kernel0, problem.kernel1);
    const CanonicalPairing& pr = out.pairing;
    const std::vector<KernelWeights> weights = kernel_overlap_weights(problem, pr);

    const Eigen::Index n = problem.dim();
    Matrix f0 = Matrix::Zero(n, n);  // identifies the role-0 state, supported on basis1
    Matrix f1 = Matrix::Zero(n, n);  // identifies the role-1 state, supported on basis0
    for (Eigen::Index j = 0; j < pr.r0; ++j) {
        const auto& w = weights[static_cast<std::size_t>(j)];
        const auto k0 = pr.basis0.basis().col(j);
        if (j < pr.r1) {
            const auto k1 = pr.basis1.basis().col(j);
            const Rank1Solution s = solve_1d(w.a0, w.a1, pr.cosines[static_cast<std::size_t>(j)]);
            f0 += s.alpha * (k1 * k1.adjoint());
            f1 += s.beta * (k0 * k0.adjoint());
            out.p_lower += s.p_success;
            out.pairs.push_back(s);
        } else {
            f1 += k0 * k0.adjoint();
            out.p_lower += w.a1;
        }
    }
    out.povm = pr.swapped ? ThreeOutcomePOVM::from_conclusive(f1, f0) : ThreeOutcomePOVM::from_conclusive(f0, f1);
    return out;
}

/// Closed-form optimum for two pure states. The returned POVM lives in the
/// space of the input vectors.
inline DiscriminationReport solve_pure(const Vector& psi0, const Vector& psi1, const Priors& priors) {
    if (psi0.size() != psi1.size() || psi0.size() == 0)
        throw Error(ErrorKind::DimensionMismatch, "state vectors have different lengths");
    for (const Vector* psi : {&psi0, &psi1})
        if (std::abs(psi->norm() - 1.0) > 1e-10) throw Error(ErrorKind::NotUnit, "state vector is not normalised");

    const double c = std::min(1.0, std::abs(psi0.dot(psi1)));
    const double sin2 = (1.0 - c) * (1.0 + c);
    const Rank1Solution s = solve_1d(priors.p0() * sin2, priors.p1() * sin2, c);

    const DiscriminationProblem problem = build_problem(pure_density(psi0, 1e-9), pure_density(psi1, 1e-9), priors);
    const CanonicalPairing pairing = canonical_pairing(problem.kernel0, problem.kernel1);
    ThreeOutcomePOVM povm = ThreeOutcomePOVM::inconclusive(problem.dim());
    if (pairing.r0 == 1 && pairing.r1 == 1) {
        const auto k0 = pairing.basis0.basis().col(0);
        const auto k1 = pairing.basis1.basis().col(0);
        povm = ThreeOutcomePOVM::from_conclusive(s.alpha * (k1 * k1.adjoint()), s.beta * (k0 * k0.adjoint()));
    }

    DiscriminationReport r;
    r.povm = lift_povm(problem, povm);
    r.p_lower = s.p_success;
    r.p_upper = s.p_success;
    r.exact = true;
    r.method = Method::PureStates;
    r.fidelity = c;
    r.angles = pairing.angles;
    return r;
}

/// Picks the strongest applicable method: orthogonal kernels, then two
/// one-dimensional kernels, otherwise the lower/upper bound pair.
inline DiscriminationReport solve(const DiscriminationProblem& problem) {
    const CanonicalPairing pairing = canonical_pairing(problem.kernel0, problem.kernel1);
    bool orthogonal = true;
    for (double c : pairing.cosines) orthogonal = orthogonal && c <= kOrthogonalCosine;
    if (orthogonal) return solve_orthogonal_kernels(problem);

    DiscriminationReport r;
    r.fidelity = fidelity(problem.rho0, problem.rho1);
    r.angles = pairing.angles;
    r.swapped = pairing.swapped;

    if (pairing.r0 == 1 && pairing.r1 == 1) {
        const KernelWeights w = kernel_overlap_weights(problem, pairing).front();
        const Rank1Solution s = solve_1d(w.a0, w.a1, pairing.cosines.front());
        const auto k0 = pairing.basis0.basis().col(0);
        const auto k1 = pairing.basis1.basis().col(0);
        r.povm = ThreeOutcomePOVM::from_conclusive(s.alpha * (k1 * k1.adjoint()), s.beta * (k0 * k0.adjoint()));
        r.p_lower = s.p_success;
        r.p_upper = s.p_success;
        r.exact = true;
        r.method = problem.dim() == 2 ? Method::PureStates : Method::OneDimKernels;
        return r;
    }

    LowerBound lb = lower_bound_povm(problem);
    r.p_lower = lb.p_lower;
    r.povm = std::move(lb.povm);
    r.p_upper = upper_bound_from_fidelity(r.fidelity, problem.priors);
    r.exact = std::abs(r.p_upper - r.p_lower) <= kExactGap;
    r.method = Method::GeneralBounds;
    return r;
}

}  // namespace udisc

#endif  // UDISC_SOLVERS_HPP
