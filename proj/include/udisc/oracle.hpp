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

// Brute-force reference maximisers. Nothing in here uses canonical angles or
// any of the closed forms in solvers.hpp; results from this header are what
// the closed forms get checked against.

#ifndef UDISC_ORACLE_HPP
#define UDISC_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "udisc/povm.hpp"

namespace udisc {

inline constexpr Eigen::Index kOracleMaxDim = 16;

struct OracleConfig {
    std::uint64_t seed = 0;
    int restarts = 20;
    int max_iterations = 5000;  // Newton iterations per restart
    double step_decay = 0.97;   // backtracking contraction of the line search
    double feasibility_tol = 1e-9;

    void validate() const {
        if (restarts < 1 || max_iterations < 1 || !(step_decay > 0.0 && step_decay < 1.0) ||
            !(feasibility_tol > 0.0))
            throw Error(ErrorKind::InvalidArgument, "oracle configuration out of range");
    }
};

struct OracleResult {
    double p_star = 0.0;
    ThreeOutcomePOVM povm;
    int iterations_used = 0;
    bool converged = false;
};

namespace detail {

/// Semidefinite program
///   maximise  Tr(G0 M0) + Tr(G1 M1)
///   s.t.      M0, M1 >= 0,  I - Y1 M0 Y1^dag - Y0 M1 Y0^dag >= 0
/// over Hermitian blocks, solved with a log-barrier path-following method.
/// E0 = Y1 M0 Y1^dag can only fire on the kernel of rho1 (and vice versa),
/// so the zero-error constraints hold by construction.
class KernelBlockSdp {
public:
    KernelBlockSdp(const DiscriminationProblem& problem) : n_(problem.dim()) {
        // Block 0 carries E0 (on K1), block 1 carries E1 (on K0).
        add_block(problem.kernel1.basis(), problem.priors.p0() * problem.rho0.matrix());
        add_block(problem.kernel0.basis(), problem.priors.p1() * problem.rho1.matrix());
        barrier_weight_ = static_cast<double>(n_);
        for (const Block& b : blocks_) barrier_weight_ += static_cast<double>(b.size);
    }

    Eigen::Index num_params() const { return static_cast<Eigen::Index>(params_.size()); }
    double barrier_weight() const { return barrier_weight_; }

    double objective(const Eigen::VectorXd& x) const { return cost_.dot(x); }

    std::vector<Matrix> blocks(const Eigen::VectorXd& x) const {
        std::vector<Matrix> out;
        for (const Block& b : blocks_) out.push_back(Matrix::Zero(b.size, b.size));
        for (std::size_t a = 0; a < params_.size(); ++a)
            add_basis(out[static_cast<std::size_t>(params_[a].block)], params_[a], x(static_cast<Eigen::Index>(a)));
        return out;
    }

    Matrix conclusive(const Eigen::VectorXd& x, int which) const {
        // which = 0 -> E0, 1 -> E1 (block index coincides with the outcome)
        const std::vector<Matrix> m = blocks(x);
        const Block& b = blocks_[static_cast<std::size_t>(which)];
        if (b.size == 0) return Matrix::Zero(n_, n_);
        return b.y * m[static_cast<std::size_t>(which)] * b.y.adjoint();
    }

    Matrix slack(const Eigen::VectorXd& x) const {
        return Matrix::Identity(n_, n_) - conclusive(x, 0) - conclusive(x, 1);
    }

    /// Parameters of the given blocks (must be Hermitian).
    Eigen::VectorXd pack(const std::vector<Matrix>& m) const {
        Eigen::VectorXd x(num_params());
        for (std::size_t a = 0; a < params_.size(); ++a) {
            const Param& p = params_[a];
            const Complex v = m[static_cast<std::size_t>(p.block)](p.i, p.j);
            x(static_cast<Eigen::Index>(a)) = p.kind == 2 ? v.imag() : v.real();
        }
        return x;
    }

    /// -objective - mu * sum(log det) or +inf outside the interior.
    double barrier(const Eigen::VectorXd& x, double mu) const {
        double logdet = 0.0;
        for (const Matrix& m : blocks(x)) {
            if (m.rows() == 0) continue;
            if (!log_det_pd(m, logdet)) return std::numeric_limits<double>::infinity();
        }
        if (!log_det_pd(slack(x), logdet)) return std::numeric_limits<double>::infinity();
        return -objective(x) - mu * logdet;
    }

    void gradient_hessian(const Eigen::VectorXd& x, double mu, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
        const Eigen::Index m = num_params();
        const std::vector<Matrix> mats = blocks(x);
        std::vector<Matrix> block_inv;
        for (const Matrix& b : mats) block_inv.push_back(b.rows() ? Matrix(b.inverse()) : b);
        const Matrix slack_inv = slack(x).inverse();

        std::vector<Matrix> p(static_cast<std::size_t>(m));  // M^-1 B_a
        std::vector<Matrix> q(static_cast<std::size_t>(m));  // S^-1 Y B_a Y^dag
        grad = -cost_;
        for (Eigen::Index a = 0; a < m; ++a) {
            const Param& pa = params_[static_cast<std::size_t>(a)];
            const Block& blk = blocks_[static_cast<std::size_t>(pa.block)];
            Matrix basis = Matrix::Zero(blk.size, blk.size);
            add_basis(basis, pa, 1.0);
            p[static_cast<std::size_t>(a)] = block_inv[static_cast<std::size_t>(pa.block)] * basis;
            q[static_cast<std::size_t>(a)] = slack_inv * (blk.y * basis * blk.y.adjoint());
            grad(a) += mu * (q[static_cast<std::size_t>(a)].trace().real() - p[static_cast<std::size_t>(a)].trace().real());
        }
        hess.resize(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = a; b < m; ++b) {
                const auto& pa = p[static_cast<std::size_t>(a)];
                const auto& pb = p[static_cast<std::size_t>(b)];
                double h = trace_product(q[static_cast<std::size_t>(a)], q[static_cast<std::size_t>(b)]);
                if (params_[static_cast<std::size_t>(a)].block == params_[static_cast<std::size_t>(b)].block)
                    h += trace_product(pa, pb);
                hess(a, b) = hess(b, a) = mu * h;
            }
        }
    }

    Eigen::Index block_size(int b) const { return blocks_[static_cast<std::size_t>(b)].size; }
    const Matrix& block_basis(int b) const { return blocks_[static_cast<std::size_t>(b)].y; }

private:
    struct Block {
        Matrix y;
        Eigen::Index size = 0;
    };
    struct Param {
        int block;
        Eigen::Index i;
        Eigen::Index j;
        int kind;  // 0: e_ii, 1: e_ij + e_ji, 2: i e_ij - i e_ji
    };

    void add_block(const Matrix& y, const Matrix& weighted_state) {
        const int index = static_cast<int>(blocks_.size());
        blocks_.push_back({y, y.cols()});
        const Matrix gain = y.adjoint() * weighted_state * y;
        std::vector<double> cost;
        for (Eigen::Index i = 0; i < y.cols(); ++i) {
            params_.push_back({index, i, i, 0});
            cost.push_back(gain(i, i).real());
            for (Eigen::Index j = i + 1; j < y.cols(); ++j) {
                params_.push_back({index, i, j, 1});
                cost.push_back(2.0 * gain(j, i).real());
                params_.push_back({index, i, j, 2});
                // Tr(G (i e_ij - i e_ji)) = i G_ji - i G_ij = -2 Im(G_ji)
                cost.push_back(-2.0 * gain(j, i).imag());
            }
        }
        const Eigen::Index old = cost_.size();
        cost_.conservativeResize(old + static_cast<Eigen::Index>(cost.size()));
        for (std::size_t k = 0; k < cost.size(); ++k) cost_(old + static_cast<Eigen::Index>(k)) = cost[k];
    }

    static void add_basis(Matrix& m, const Param& p, double v) {
        switch (p.kind) {
            case 0: m(p.i, p.i) += v; break;
            case 1: m(p.i, p.j) += v; m(p.j, p.i) += v; break;
            default: m(p.i, p.j) += Complex(0.0, v); m(p.j, p.i) += Complex(0.0, -v); break;
        }
    }

    static double trace_product(const Matrix& a, const Matrix& b) {
        return a.cwiseProduct(b.transpose()).sum().real();
    }

    static bool log_det_pd(const Matrix& m, double& acc) {
        Eigen::LLT<Matrix> llt((m + m.adjoint()) / 2.0);
        if (llt.info() != Eigen::Success) return false;
        const auto diag = llt.matrixLLT().diagonal();
        for (Eigen::Index i = 0; i < diag.size(); ++i) {
            const double d = diag(i).real();
            if (!(d > 0.0)) return false;
            acc += 2.0 * std::log(d);
        }
        return true;
    }

    Eigen::Index n_;
    std::vector<Block> blocks_;
    std::vector<Param> params_;
    Eigen::VectorXd cost_;
    double barrier_weight_ = 0.0;
};

inline Matrix random_wishart(Eigen::Index k, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Matrix w = g * g.adjoint();
    return w / w.trace().real();
}

}  // namespace detail

/// Numerical maximum of the success probability over all zero-error POVMs.
///
/// Each restart starts from a random strictly feasible point (Wishart blocks
/// scaled into the interior) and follows the barrier's central path down to
/// a duality gap of 1e-10. The best restart wins.
inline OracleResult oracle_maximize(const DiscriminationProblem& problem, const OracleConfig& config = {}) {
    config.validate();
    if (problem.dim() > kOracleMaxDim)
        throw Error(ErrorKind::DimensionTooLarge, "oracle is limited to dimension " + std::to_string(kOracleMaxDim));
    if (!problem.reduced) throw Error(ErrorKind::NotReduced, "oracle requires a reduced problem");

    const detail::KernelBlockSdp sdp(problem);
    OracleResult best;
    best.povm = ThreeOutcomePOVM::inconclusive(problem.dim());
    if (sdp.num_params() == 0) {
        best.converged = true;
        return best;
    }
    best.p_star = -1.0;

    constexpr double kGapTarget = 1e-10;
    constexpr double kMuShrink = 10.0;
    for (int restart = 0; restart < config.restarts; ++restart) {
        std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(restart));
        std::vector<Matrix> start;
        for (int b = 0; b < 2; ++b) start.push_back(detail::random_wishart(sdp.block_size(b), rng));
        Eigen::VectorXd x = sdp.pack(start);
        const double top = max_eigenvalue(Matrix::Identity(problem.dim(), problem.dim()) - sdp.slack(x), 1e-8);
        if (top > 0.0) x *= 0.5 / top;

        int iterations = 0;
        bool converged = false;
        double mu = 1.0;
        Eigen::VectorXd grad;
        Eigen::MatrixXd hess;
        while (iterations < config.max_iterations) {
            // Centring at fixed mu.
            while (iterations < config.max_iterations) {
                sdp.gradient_hessian(x, mu, grad, hess);
                const Eigen::VectorXd dx = -hess.ldlt().solve(grad);
                const double decrement = -grad.dot(dx);
                ++iterations;
                if (!(decrement > 2e-10 * mu)) break;
                const double f0 = sdp.barrier(x, mu);
                double step = 1.0;
                bool moved = false;
                while (step > 1e-14) {
                    const Eigen::VectorXd trial = x + step * dx;
                    const double f = sdp.barrier(trial, mu);
                    if (f <= f0 - 0.25 * step * decrement) {
                        x = trial;
                        moved = true;
                        break;
                    }
                    step *= config.step_decay;
                }
                if (!moved) break;
            }
            if (sdp.barrier_weight() * mu <= kGapTarget) {
                converged = true;
                break;
            }
            mu /= kMuShrink;
        }

        const double value = sdp.objective(x);
        if (value > best.p_star) {
            best.p_star = value;
            best.povm = ThreeOutcomePOVM::from_conclusive(sdp.conclusive(x, 0), sdp.conclusive(x, 1));
            best.iterations_used = iterations;
            best.converged = converged;
        }
    }
    return best;
}

/// Exhaustive grid search of alpha*A0 + beta*A1 over alpha, beta in
/// {0, step, 2 step, ...} subject to
///   (alpha + beta + sqrt((alpha - beta)^2 + 4 alpha beta cos^2)) / 2 <= 1.
/// For fixed alpha the left side is nondecreasing in beta, so the largest
/// feasible grid beta is located by bisection.
inline double grid_oracle_1d(double a0, double a1, double cos_theta, double step) {
    if (!(step > 0.0 && step <= 0.01)) throw Error(ErrorKind::InvalidArgument, "grid step must lie in (0, 0.01]");
    const double c2 = cos_theta * cos_theta;
    const auto top_eigenvalue = [c2](double alpha, double beta) {
        return 0.5 * (alpha + beta + std::sqrt((alpha - beta) * (alpha - beta) + 4.0 * alpha * beta * c2));
    };
    const auto n = static_cast<long>(std::floor(1.0 / step + 1e-9));
    double best = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double alpha = static_cast<double>(i) * step;
        if (top_eigenvalue(alpha, 0.0) > 1.0 + 1e-12) continue;
        long lo = 0;
        long hi = n;
        while (lo < hi) {
            const long mid = (lo + hi + 1) / 2;
            if (top_eigenvalue(alpha, static_cast<double>(mid) * step) <= 1.0 + 1e-12)
                lo = mid;
            else
                hi = mid - 1;
        }
        best = std::max(best, alpha * a0 + static_cast<double>(lo) * step * a1);
    }
    return best;
}

}  // namespace udisc

#endif  // UDISC_ORACLE_HPP
