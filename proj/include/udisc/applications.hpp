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

#ifndef UDISC_APPLICATIONS_HPP
#define UDISC_APPLICATIONS_HPP

#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <vector>

#include "udisc/solvers.hpp"

namespace udisc {

namespace detail {

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline void require_unit(const Vector& v, std::string_view what) {
    if (v.size() == 0 || std::abs(v.norm() - 1.0) > 1e-10)
        throw Error(ErrorKind::NotUnit, std::string(what) + " is not a unit vector");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// State comparison: are two systems, each in |psi1> or |psi2>, in the same
// state or in different states? Equal odds for "same" and "different".

struct ComparisonProblem {
    Vector psi1;
    Vector psi2;
    Complex overlap;  // <psi1|psi2>

    static ComparisonProblem make(Vector psi1, Vector psi2) {
        detail::require_unit(psi1, "psi1");
        detail::require_unit(psi2, "psi2");
        if (psi1.size() != psi2.size()) throw Error(ErrorKind::DimensionMismatch, "psi1 and psi2 differ in length");
        const Complex overlap = psi1.dot(psi2);
        return {std::move(psi1), std::move(psi2), overlap};
    }
};

/// rho0 = (|11><11| + |22><22|)/2 ("same"), rho1 = (|12><12| + |21><21|)/2
/// ("different") on the two-copy space, reduced to the span of the supports.
inline DiscriminationProblem build_comparison(const ComparisonProblem& cp) {
    if (cp.psi1.size() < 2) throw Error(ErrorKind::InvalidArgument, "comparison needs dimension >= 2");
    if (std::abs(cp.overlap) >= 1.0 - 1e-10)
        throw Error(ErrorKind::DegenerateStates, "psi1 and psi2 coincide up to a phase");
    using detail::kron;
    const Vector same1 = kron(cp.psi1, cp.psi1);
    const Vector same2 = kron(cp.psi2, cp.psi2);
    const Vector diff12 = kron(cp.psi1, cp.psi2);
    const Vector diff21 = kron(cp.psi2, cp.psi1);
    const Matrix rho0 = 0.5 * (same1 * same1.adjoint() + same2 * same2.adjoint());
    const Matrix rho1 = 0.5 * (diff12 * diff12.adjoint() + diff21 * diff21.adjoint());
    return build_problem(validate_density(rho0, 1e-9), validate_density(rho1, 1e-9), Priors::equal());
}

/// 1 - F(rho0, rho1): the value the comparison problem's bounds both reach.
inline double comparison_closed_form(const ComparisonProblem& cp) {
    const DiscriminationProblem p = build_comparison(cp);
    return 1.0 - udisc::fidelity(p.rho0, p.rho1);
}

inline DiscriminationReport solve_comparison(const ComparisonProblem& cp) {
    return solve(build_comparison(cp));
}

// ---------------------------------------------------------------------------
// State filtering: is the system in |target> or in one of the `others`?

enum class FilterBranch {
    TargetSaturated,  // F~ <= cos^2(theta)
    Interior,         // cos^2(theta) <= F~ <= 1
    OthersSaturated,  // F~ >= 1
};

constexpr std::string_view to_string(FilterBranch b) {
    switch (b) {
        case FilterBranch::TargetSaturated: return "TargetSaturated";
        case FilterBranch::Interior: return "Interior";
        case FilterBranch::OthersSaturated: return "OthersSaturated";
    }
    return "Unknown";
}

struct FilteringProblem {
    Vector target;
    std::vector<Vector> others;
    std::vector<double> etas;  // etas[0] is the target's prior
    double cos_theta = 0.0;    // between K1 and its best match in K0; 1 when K1 is trivial
    double f_tilde = 0.0;      // F(rho0, rho1) / sqrt(p0 / p1)
    double fidelity = 0.0;     // F(rho0, rho1)

    double p0() const { return etas.front(); }
    double p1() const { return 1.0 - etas.front(); }

    static FilteringProblem make(Vector target, std::vector<Vector> others, std::vector<double> etas);
};

inline DiscriminationProblem build_filtering(const FilteringProblem& fp) {
    if (fp.others.empty()) throw Error(ErrorKind::EmptyOtherSet, "no states to filter against");
    if (fp.etas.size() != fp.others.size() + 1)
        throw Error(ErrorKind::InvalidArgument, "need one prior per state, target first");
    const Eigen::Index n = fp.target.size();
    const double rest = fp.p1();
    if (!(rest > 0.0)) throw Error(ErrorKind::BadPriors, "the other states carry no prior weight");

    Matrix mixed = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < fp.others.size(); ++i) {
        if (fp.others[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "state vectors differ in length");
        mixed += (fp.etas[i + 1] / rest) * (fp.others[i] * fp.others[i].adjoint());
    }
    DiscriminationProblem p = build_problem(pure_density(fp.target, 1e-9), validate_density(mixed, 1e-9),
                                            Priors::make(fp.p0(), rest));
    if (p.dim() < 2) throw Error(ErrorKind::DegenerateStates, "all states are parallel");
    return p;
}

inline FilteringProblem FilteringProblem::make(Vector target, std::vector<Vector> others, std::vector<double> etas) {
    if (others.empty()) throw Error(ErrorKind::EmptyOtherSet, "no states to filter against");
    if (etas.size() != others.size() + 1)
        throw Error(ErrorKind::InvalidArgument, "need one prior per state, target first");
    for (double e : etas)
        if (!(e >= 0.0)) throw Error(ErrorKind::BadPriors, "priors must be non-negative");
    if (std::abs(std::accumulate(etas.begin(), etas.end(), 0.0) - 1.0) > 1e-12)
        throw Error(ErrorKind::BadPriors, "priors must sum to 1");
    detail::require_unit(target, "target");
    for (const Vector& v : others) detail::require_unit(v, "filtered state");

    FilteringProblem fp{std::move(target), std::move(others), std::move(etas)};
    const DiscriminationProblem p = build_filtering(fp);
    const CanonicalPairing pairing = canonical_pairing(p.kernel0, p.kernel1);
    // rho0 is pure, so K0 is the larger kernel and no swap happens; K1 has rank <= 1.
    fp.cos_theta = pairing.cosines.empty() ? 1.0 : pairing.cosines.front();
    fp.fidelity = udisc::fidelity(p.rho0, p.rho1);
    fp.f_tilde = fp.p0() > 0.0 ? fp.fidelity * std::sqrt(fp.p1() / fp.p0()) : std::numeric_limits<double>::infinity();
    return fp;
}

inline FilterBranch filtering_branch(const FilteringProblem& fp) {
    const double c2 = fp.cos_theta * fp.cos_theta;
    if (fp.f_tilde <= c2) return FilterBranch::TargetSaturated;
    if (fp.f_tilde <= 1.0) return FilterBranch::Interior;
    return FilterBranch::OthersSaturated;
}

inline double filtering_branch_value(const FilteringProblem& fp, FilterBranch branch) {
    const double p0 = fp.p0();
    const double p1 = fp.p1();
    const double f = fp.fidelity;
    const double c2 = fp.cos_theta * fp.cos_theta;
    switch (branch) {
        case FilterBranch::TargetSaturated: {
            // F^2 <= cos^2(theta) always, so the ratio only degenerates as 0/0.
            const double ratio = c2 > 1e-300 ? f * f / c2 : 0.0;
            return 1.0 - p0 * c2 - p1 * ratio;
        }
        case FilterBranch::Interior: return 1.0 - 2.0 * std::sqrt(p0 * p1) * f;
        case FilterBranch::OthersSaturated: return p1 * (1.0 - f * f);
    }
    return 0.0;
}

/// Three-branch closed form of the filtering success probability.
inline double filtering_closed_form(const FilteringProblem& fp) {
    return filtering_branch_value(fp, filtering_branch(fp));
}

}  // namespace udisc

#endif  // UDISC_APPLICATIONS_HPP
