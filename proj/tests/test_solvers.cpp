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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace udisc {
namespace {

using testing::diag;
using testing::PovmIsValid;

double MinEigenOfConstraint(const Rank1Solution& s, double c) {
    Vector k0(2);
    Vector k1(2);
    k0 << 1.0, 0.0;
    k1 << c, std::sqrt(std::max(0.0, 1.0 - c * c));
    const Matrix m = Matrix::Identity(2, 2) - s.alpha * k1 * k1.adjoint() - s.beta * k0 * k0.adjoint();
    return min_eigenvalue(m, 1e-9);
}

TEST(Solve1d, OrthogonalLimit) {
    const Rank1Solution s = solve_1d(0.25, 0.25, 0.0);
    EXPECT_DOUBLE_EQ(s.alpha, 1.0);
    EXPECT_DOUBLE_EQ(s.beta, 1.0);
    EXPECT_NEAR(s.p_success, 0.5, 1e-15);
}

TEST(Solve1d, InteriorBranch) {
    const Rank1Solution s = solve_1d(0.4, 0.1, 0.3);
    EXPECT_EQ(s.branch, Branch::Interior);
    EXPECT_NEAR(s.p_success, 0.38 / 0.91, 1e-14);
    EXPECT_GE(MinEigenOfConstraint(s, 0.3), -1e-12);
}

TEST(Solve1d, SaturatedBranch) {
    const Rank1Solution s = solve_1d(0.4, 0.1, 0.8);
    EXPECT_EQ(s.branch, Branch::Saturated);
    EXPECT_DOUBLE_EQ(s.alpha, 1.0);
    EXPECT_DOUBLE_EQ(s.beta, 0.0);
    EXPECT_NEAR(s.p_success, 0.4, 1e-15);
}

TEST(Solve1d, SymmetricUnderRoleExchange) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double a0 = u(rng);
        const double a1 = u(rng);
        const double c = u(rng);
        const Rank1Solution s = solve_1d(a0, a1, c);
        const Rank1Solution r = solve_1d(a1, a0, c);
        EXPECT_NEAR(s.p_success, r.p_success, 1e-12);
        EXPECT_GE(MinEigenOfConstraint(s, c), -1e-12);
        EXPECT_GE(s.p_success, std::max(a0, a1) - 1e-15);
        EXPECT_LE(s.p_success, a0 + a1 + 1e-15);
    }
}

TEST(Solve1d, RejectsBadAngle) {
    for (double c : {-0.1, 1.1, std::nan("")}) {
        try {
            solve_1d(0.2, 0.2, c);
            ADD_FAILURE() << "expected BadAngle for " << c;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::BadAngle);
        }
    }
}

TEST(SolvePure, EqualPriors) {
    const auto [a, b] = testing::pure_pair(0.5);
    const DiscriminationReport r = solve_pure(a, b, Priors::equal());
    EXPECT_NEAR(r.p_lower, 0.5, 1e-14);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.method, Method::PureStates);
}

TEST(SolvePure, UnequalPriorsSaturated) {
    const auto [a, b] = testing::pure_pair(0.5);
    const DiscriminationReport r = solve_pure(a, b, Priors::make(0.9, 0.1));
    EXPECT_NEAR(r.p_lower, 0.675, 1e-14);
}

TEST(SolvePure, PovmLivesInInputSpace) {
    Rng rng(2);
    const Vector a = random_unit_vector(4, rng);
    const Vector b = random_unit_vector(4, rng);
    const DiscriminationReport r = solve_pure(a, b, Priors::make(0.3, 0.7));
    const DiscriminationProblem full = make_unreduced_problem(pure_density(a), pure_density(b), Priors::make(0.3, 0.7));
    EXPECT_TRUE(PovmIsValid(full, r.povm));
    EXPECT_NEAR(success_probability(full, r.povm), r.p_lower, 1e-12);
}

TEST(SolvePure, RejectsNonUnitVectors) {
    Vector a(2);
    a << 1.0, 1.0;
    try {
        solve_pure(a, testing::basis_vector(2, 0), Priors::equal());
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnit);
    }
}

TEST(Solve, OrthogonalKernelExample) {
    const DiscriminationProblem p = testing::diagonal_example();
    const DiscriminationReport r = solve(p);
    EXPECT_EQ(r.method, Method::OrthogonalKernels);
    EXPECT_TRUE(r.exact);
    EXPECT_NEAR(r.p_lower, 0.5, 1e-12);
    EXPECT_NEAR(r.p_upper, 0.5, 1e-12);
    EXPECT_TRUE(PovmIsValid(p, r.povm));
}

TEST(Solve, OrthogonalKernelsRequiresOrthogonality) {
    Rng rng(6);
    const DiscriminationProblem p = testing::random_problem(4, 2, 2, rng);
    try {
        solve_orthogonal_kernels(p);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotApplicable);
    }
}

TEST(Solve, IdenticalStatesGiveZero) {
    const DensityMatrix rho = validate_density(diag({0.5, 0.5, 0.0}));
    const DiscriminationReport r = solve(build_problem(rho, rho, Priors::equal()));
    EXPECT_NEAR(r.p_lower, 0.0, 1e-15);
    EXPECT_NEAR(r.p_upper, 0.0, 1e-12);
}

TEST(Solve, FullRankStateCannotBeExcluded) {
    Rng rng(12);
    const DiscriminationProblem p = testing::random_problem(3, 3, 1, rng, Priors::make(0.4, 0.6));
    const DiscriminationReport r = solve(p);
    EXPECT_EQ(p.r0(), 0);
    EXPECT_TRUE(PovmIsValid(p, r.povm));
    EXPECT_LE(r.p_lower, r.p_upper + 1e-12);
    // rho0 has full support, so rho1 can never be identified without error.
    EXPECT_NEAR(r.povm.e1.norm(), 0.0, 1e-12);
    EXPECT_GT(r.p_lower, 0.0);
}

TEST(Solve, OneDimensionalKernels) {
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        const DiscriminationProblem p = testing::random_problem(3, 2, 2, rng, Priors::make(0.35, 0.65));
        const DiscriminationReport r = solve(p);
        EXPECT_EQ(r.method, Method::OneDimKernels);
        EXPECT_TRUE(r.exact);
        EXPECT_TRUE(PovmIsValid(p, r.povm));
        EXPECT_NEAR(success_probability(p, r.povm), r.p_lower, 1e-12);
    }
}

TEST(Solve, BoundsOrderedAndPovmValid) {
    Rng rng(14);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int t = 0; t < 60; ++t) {
        const Eigen::Index n = 3 + t % 4;
        const Eigen::Index r0 = 1 + t % (n - 1);
        const Eigen::Index r1 = 1 + (t / 3) % (n - 1);
        const double p0 = u(rng);
        const DiscriminationProblem p = testing::random_problem(n, r0, r1, rng, Priors::make(p0, 1.0 - p0));
        const DiscriminationReport r = solve(p);
        EXPECT_LE(r.p_lower, r.p_upper + 1e-12);
        EXPECT_GE(r.p_lower, 0.0);
        EXPECT_LE(r.p_upper, 1.0);
        EXPECT_TRUE(PovmIsValid(p, r.povm));
        EXPECT_NEAR(success_probability(p, r.povm), r.p_lower, 1e-12);
    }
}

TEST(Solve, RoleExchangeSwapsPovmOutcomes) {
    Rng rng(15);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix a = random_density(5, 2, rng);
        const DensityMatrix b = random_density(5, 4, rng);
        const DiscriminationProblem p = build_problem(a, b, Priors::make(0.3, 0.7));
        const DiscriminationProblem q = build_problem(b, a, Priors::make(0.7, 0.3));
        const DiscriminationReport rp = solve(p);
        const DiscriminationReport rq = solve(q);
        EXPECT_NEAR(rp.p_lower, rq.p_lower, 1e-12);
        EXPECT_NEAR(rp.p_upper, rq.p_upper, 1e-12);
        EXPECT_NE(rp.swapped, rq.swapped);
        EXPECT_NEAR(success_probability(p, rq.povm.swapped()), rp.p_lower, 1e-12);
    }
}

TEST(Solve, UnitaryInvariance) {
    Rng rng(16);
    for (int t = 0; t < 20; ++t) {
        const DensityMatrix a = random_density(4, 2, rng);
        const DensityMatrix b = random_density(4, 2, rng);
        const Matrix u = random_unitary(4, rng);
        const DiscriminationReport r = solve(build_problem(a, b, Priors::equal()));
        const DiscriminationReport s = solve(build_problem(validate_density(u * a.matrix() * u.adjoint(), 1e-9),
                                                           validate_density(u * b.matrix() * u.adjoint(), 1e-9),
                                                           Priors::equal()));
        EXPECT_NEAR(r.p_lower, s.p_lower, 1e-10);
        EXPECT_NEAR(r.p_upper, s.p_upper, 1e-10);
    }
}

TEST(UpperBound, BothBranches) {
    const Priors eq = Priors::equal();
    EXPECT_NEAR(upper_bound_from_fidelity(0.5, eq), 0.5, 1e-15);
    const Priors skew = Priors::make(0.9, 0.1);
    // F = 0.5 >= sqrt(1/9): saturated branch pmax (1 - F^2).
    EXPECT_NEAR(upper_bound_from_fidelity(0.5, skew), 0.9 * 0.75, 1e-15);
    // F = 0.2 < 1/3: 1 - 2 sqrt(p0 p1) F.
    EXPECT_NEAR(upper_bound_from_fidelity(0.2, skew), 1.0 - 2.0 * 0.3 * 0.2, 1e-15);
    // Continuous at the switch point.
    const double f = 1.0 / 3.0;
    EXPECT_NEAR(upper_bound_from_fidelity(f - 1e-12, skew), upper_bound_from_fidelity(f + 1e-12, skew), 1e-10);
}

TEST(Solve1d, BranchesAgreeAtTheBoundary) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.01, 0.6);
    for (int t = 0; t < 100; ++t) {
        const double a0 = u(rng);
        const double a1 = u(rng);
        const double c = std::sqrt(std::min(a0, a1) / std::max(a0, a1));
        const double sin2 = 1.0 - c * c;
        const double interior =
            a0 * (1.0 - std::sqrt(a1 / a0) * c) / sin2 + a1 * (1.0 - std::sqrt(a0 / a1) * c) / sin2;
        const double saturated = std::max(a0, a1);
        if (sin2 > 1e-6) {
            EXPECT_NEAR(interior, saturated, 1e-9);
        }
        EXPECT_NEAR(solve_1d(a0, a1, c).p_success, saturated, 1e-9);
        EXPECT_NEAR(solve_1d(a0, a1, c * (1.0 - 1e-12)).p_success, saturated, 1e-9);
    }
}

// Monotone bracketing P_L <= P* <= P_U against the independent oracle over
// several dimension and rank configurations.
TEST(Solve, BracketsTheOracleAcrossConfigurations) {
    Rng rng(20);
    OracleConfig config;
    config.restarts = 1;
    int instances = 0;
    for (Eigen::Index n : {3, 4})
        for (Eigen::Index r0 = 1; r0 <= 3 && r0 < n; ++r0)
            for (Eigen::Index r1 = 1; r1 <= 3 && r1 < n; ++r1)
                for (int t = 0; t < 100; ++t) {
                    const DiscriminationProblem p = testing::random_problem(n, r0, r1, rng);
                    const DiscriminationReport r = solve(p);
                    config.seed = static_cast<std::uint64_t>(t);
                    const double star = oracle_maximize(p, config).p_star;
                    ASSERT_LE(r.p_lower, star + 1e-6) << "n=" << n << " ranks " << r0 << "," << r1;
                    ASSERT_LE(star, r.p_upper + 1e-6) << "n=" << n << " ranks " << r0 << "," << r1;
                    ++instances;
                }
    EXPECT_EQ(instances, 1300);
}

}  // namespace
}  // namespace udisc
