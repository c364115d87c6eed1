/*
 * Copyright (c) 2026, the ktsne authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ktsne/embedding.hpp"

#include "ktsne/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <string>

namespace ktsne {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kDivergenceBound = 1e8;
constexpr double kInitStd = 1e-4;

// Rescale so coordinate 0 has standard deviation kInitStd; a scores matrix
// with no spread (constant input) stays all-zero.
Matrix rescale_init(Matrix scores) {
    const double n = static_cast<double>(scores.rows());
    const double sd = std::sqrt(scores.col(0).squaredNorm() / n);
    if (!(sd > 0.0) || !std::isfinite(sd)) {
        return Matrix::Zero(scores.rows(), scores.cols());
    }
    scores *= kInitStd / sd;
    return scores;
}

void flip_to_positive_peak(Eigen::Ref<Matrix> cols) {
    for (Index c = 0; c < cols.cols(); ++c) {
        Index peak = 0;
        cols.col(c).cwiseAbs().maxCoeff(&peak);
        if (cols(peak, c) < 0.0) cols.col(c) = -cols.col(c);
    }
}

Matrix tsne_gradient_impl(const Matrix& P, const Matrix& Q, const Matrix& num,
                          const Matrix& Y) {
    const Index n = Y.rows();
    const Index m = Y.cols();
    Matrix G = Matrix::Zero(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double coef = (P(i, j) - Q(i, j)) * num(i, j);
            G.row(i) += coef * (Y.row(i) - Y.row(j));
        }
        G.row(i) *= 4.0;
    }
    return G;
}

// Gram-aware pair gradient: for RBF the required kernel value is already in
// the Gram matrix, so no exponential is re-evaluated.
Matrix e2e_gradient_impl(const Matrix& P, const Matrix& Q, const Matrix& weights,
                         const Matrix& gram, const Matrix& Y,
                         const KernelSpec& spec, double alpha, bool use_fd) {
    const Index n = Y.rows();
    const Index m = Y.cols();
    const double tail_coef = (alpha + 1.0) / alpha;
    Matrix G = Matrix::Zero(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double coef = (P(i, j) - Q(i, j)) * weights(i, j);
            if (use_fd) {
                G.row(i) += coef * kernel_pair_gradient_fd(spec, Y.row(i).transpose(),
                                                           Y.row(j).transpose())
                                       .transpose();
            } else if (spec.kind == KernelKind::RBF) {
                G.row(i) += coef * 4.0 * spec.gamma * gram(i, j) *
                            (Y.row(i) - Y.row(j));
            } else {
                G.row(i) += coef * 2.0 * (Y.row(i) - Y.row(j));
            }
        }
        G.row(i) *= tail_coef;
    }
    return G;
}

}  // namespace

double OptimizerConfig::resolved_learning_rate(Index n) const {
    if (learning_rate) return *learning_rate;
    return std::max(static_cast<double>(n) / early_exaggeration_factor / 4.0, 50.0);
}

double OptimizerConfig::resolved_alpha() const {
    if (alpha) return *alpha;
    return std::max(static_cast<double>(target_dim - 1), 1.0);
}

void OptimizerConfig::validate(Index n, Index d) const {
    if (target_dim < 1) {
        throw_error(ErrorKind::Parameter, "target dimension must be >= 1");
    }
    if (!(momentum >= 0.0 && momentum < 1.0)) {
        throw_error(ErrorKind::Parameter,
                    "momentum must lie in [0, 1), got " + std::to_string(momentum));
    }
    if (late_momentum && !(*late_momentum >= 0.0 && *late_momentum < 1.0)) {
        throw_error(ErrorKind::Parameter, "late momentum must lie in [0, 1)");
    }
    if (n_iter < 1) {
        throw_error(ErrorKind::Parameter, "iteration count must be >= 1");
    }
    if (early_exaggeration_iters < 0 || n_iter < early_exaggeration_iters) {
        throw_error(ErrorKind::Parameter,
                    "need n_iter >= early_exaggeration_iters, got " +
                        std::to_string(n_iter) + " < " +
                        std::to_string(early_exaggeration_iters));
    }
    if (!(early_exaggeration_factor > 0.0)) {
        throw_error(ErrorKind::Parameter, "exaggeration factor must be positive");
    }
    if (!(perplexity > 1.0) || !(perplexity < static_cast<double>(n))) {
        throw_error(ErrorKind::Parameter,
                    "perplexity must lie in (1, n); got " + std::to_string(perplexity) +
                        " for n = " + std::to_string(n));
    }
    if (learning_rate && !(*learning_rate > 0.0)) {
        throw_error(ErrorKind::Parameter, "learning rate must be positive");
    }
    if (alpha && !(*alpha >= 1.0)) {
        throw_error(ErrorKind::Parameter, "alpha must be >= 1");
    }
    if (variant != Variant::Plain || init == InitMethod::KernelPCA) {
        kernel.validate();
    }
    if (init == InitMethod::Given) {
        if (!given_init) {
            throw_error(ErrorKind::Parameter, "init = Given requires an initial embedding");
        }
        if (given_init->rows() != n || given_init->cols() != target_dim) {
            throw_error(ErrorKind::Dimension, "given initial embedding has wrong shape");
        }
    }
    if (init == InitMethod::PCA && target_dim > d) {
        throw_error(ErrorKind::Parameter,
                    "PCA init needs target_dim <= feature count");
    }
    if (static_cast<double>(n) < 2.0 * perplexity + 1.0) {
        std::cerr << "[ktsne] warning: n = " << n << " is small for perplexity "
                  << perplexity << " (recommend n >= 2*perplexity + 1)\n";
    }
}

Matrix pca_scores(const Matrix& X, Index m) {
    const Index n = X.rows();
    const Index d = X.cols();
    if (m < 1 || m > d) {
        throw_error(ErrorKind::Parameter,
                    "PCA target dimension must lie in [1, " + std::to_string(d) +
                        "], got " + std::to_string(m));
    }
    if (!X.allFinite()) {
        throw_error(ErrorKind::Input, "data matrix contains non-finite values");
    }
    Matrix Xc = X.rowwise() - X.colwise().mean();
    Eigen::BDCSVD<Matrix> svd(Xc, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index k = std::min(m, svd.matrixV().cols());
    Matrix V = svd.matrixV().leftCols(k);
    flip_to_positive_peak(V);
    Matrix scores = Matrix::Zero(n, m);
    scores.leftCols(k) = Xc * V;
    return scores;
}

Matrix pca_init(const Matrix& X, Index m) { return rescale_init(pca_scores(X, m)); }

Matrix kernel_pca_scores(const KernelSpec& spec, const Matrix& X, Index m) {
    const Index n = X.rows();
    if (m < 1 || m > n) {
        throw_error(ErrorKind::Parameter,
                    "kernel PCA target dimension must lie in [1, " +
                        std::to_string(n) + "], got " + std::to_string(m));
    }
    const Matrix K = gram_matrix(spec, X);
    const Vector row_mean = K.rowwise().mean();
    const double grand_mean = K.mean();
    Matrix Kc = K;
    Kc.colwise() -= row_mean;
    Kc.rowwise() -= row_mean.transpose();
    Kc.array() += grand_mean;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(Kc);
    Matrix scores = Matrix::Zero(n, m);
    for (Index c = 0; c < m; ++c) {
        const Index idx = n - 1 - c;  // eigenvalues come back ascending
        const double lambda = eig.eigenvalues()(idx);
        if (lambda < 1e-12) continue;
        Vector v = eig.eigenvectors().col(idx);
        Index peak = 0;
        v.cwiseAbs().maxCoeff(&peak);
        if (v(peak) < 0.0) v = -v;
        scores.col(c) = v * std::sqrt(lambda);
    }
    return scores;
}

Matrix kernel_pca_init(const KernelSpec& spec, const Matrix& X, Index m) {
    return rescale_init(kernel_pca_scores(spec, X, m));
}

double kl_cost(const JointAffinities& P, const JointAffinities& Q) {
    const Matrix& p = P.values;
    const Matrix& q = Q.values;
    if (p.rows() != q.rows() || p.cols() != q.cols()) {
        throw_error(ErrorKind::Dimension, "P and Q shapes differ");
    }
    double kl = 0.0;
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.cols(); ++j) {
            if (j == i) continue;
            const double pij = p(i, j);
            if (pij <= kProbabilityFloor) continue;
            kl += pij * std::log(pij / std::max(q(i, j), kProbabilityFloor));
        }
    }
    return kl;
}

Matrix tsne_gradient(const JointAffinities& P, const JointAffinities& Q,
                     const Matrix& Y) {
    const Matrix num =
        detail::student_t_numerators(detail::squared_euclidean_matrix(Y));
    return tsne_gradient_impl(P.values, Q.values, num, Y);
}

Matrix e2e_kernel_gradient(const JointAffinities& P, const JointAffinities& Q,
                           const Matrix& Y, const KernelSpec& spec, double alpha,
                           bool use_fd) {
    spec.validate();
    const Matrix gram = gram_matrix(spec, Y);
    const Matrix dist = kernel_distances_from_gram(gram);
    const Matrix weights = detail::heavy_tail_weights(dist, alpha);
    return e2e_gradient_impl(P.values, Q.values, weights, gram, Y, spec, alpha,
                             use_fd);
}

ReductionResult run_reduction(const Matrix& X, const OptimizerConfig& config) {
    const auto t_total = Clock::now();
    const Index n = X.rows();
    if (n < 2) {
        throw_error(ErrorKind::Parameter, "need at least 2 data points");
    }
    config.validate(n, X.cols());

    const Index m = config.target_dim;
    const double lr = config.resolved_learning_rate(n);
    const double alpha = config.resolved_alpha();
    const bool lifted = config.variant == Variant::EndToEndKernel;

    // High-dimensional affinities. The Euclidean variant goes through the
    // Linear-kernel distance path so that a KernelHighDim run with a Linear
    // kernel reproduces it bit for bit.
    const auto t_affinity = Clock::now();
    const KernelSpec high_spec =
        config.variant == Variant::Plain ? KernelSpec::linear() : config.kernel;
    const Matrix D = kernel_distance_matrix(high_spec, X);
    const JointAffinities P = symmetrize(conditional_affinities(D, config.perplexity));

    ReductionResult result;
    result.affinity_seconds = seconds_since(t_affinity);

    EmbeddingState state;
    switch (config.init) {
        case InitMethod::PCA:
            state.Y = pca_init(X, m);
            break;
        case InitMethod::KernelPCA:
            state.Y = kernel_pca_init(config.kernel, X, m);
            break;
        case InitMethod::Given:
            state.Y = *config.given_init;
            break;
    }
    state.M = Matrix::Zero(n, m);

    const Matrix P_exaggerated = P.values * config.early_exaggeration_factor;

    const auto t_loop = Clock::now();
    for (int t = 1; t <= config.n_iter; ++t) {
        state.iter = t;
        state.exaggerating = t <= config.early_exaggeration_iters;
        const Matrix& P_used = state.exaggerating ? P_exaggerated : P.values;

        Matrix G;
        if (lifted) {
            const auto t_kernel = Clock::now();
            const Matrix gram = gram_matrix(config.kernel, state.Y);
            const Matrix dist = kernel_distances_from_gram(gram);
            result.kernel_stage_seconds += seconds_since(t_kernel);
            const JointAffinities Q =
                detail::normalize_numerators(detail::heavy_tail_numerators(dist, alpha));
            const Matrix weights = detail::heavy_tail_weights(dist, alpha);
            G = e2e_gradient_impl(P_used, Q.values, weights, gram, state.Y,
                                  config.kernel, alpha, config.fd_gradient);
        } else {
            const Matrix dist = detail::squared_euclidean_matrix(state.Y);
            const Matrix num = detail::student_t_numerators(dist);
            const JointAffinities Q = detail::normalize_numerators(num);
            G = tsne_gradient_impl(P_used, Q.values, num, state.Y);
        }

        const double mom = (config.late_momentum && !state.exaggerating)
                               ? *config.late_momentum
                               : config.momentum;
        state.M = mom * state.M - lr * G;
        state.Y += state.M;

        if (!state.Y.allFinite() ||
            state.Y.cwiseAbs().maxCoeff() > kDivergenceBound) {
            throw_error(ErrorKind::Divergence,
                        "optimization diverged at iteration " + std::to_string(t));
        }

        // The sampled cost describes the updated embedding, always against
        // the unexaggerated P.
        double kl = -1.0;
        if (t == 1 || t % 10 == 0 || t == config.n_iter) {
            const JointAffinities Q_now =
                lifted ? kernel_student_t_affinities(config.kernel, state.Y, alpha)
                       : student_t_affinities(state.Y);
            kl = kl_cost(P, Q_now);
            result.kl_trace.push_back({t, kl});
        }
        if (config.observer) {
            config.observer(IterationView{state, P_used, kl});
        }
    }
    result.loop_seconds = seconds_since(t_loop);

    result.Y = std::move(state.Y);
    result.config = config;
    result.resolved_learning_rate = lr;
    result.resolved_alpha = alpha;
    result.total_seconds = seconds_since(t_total);
    return result;
}

}  // namespace ktsne
