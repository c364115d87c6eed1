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
#pragma once

#include "ktsne/affinity.hpp"
#include "ktsne/kernels.hpp"
#include "ktsne/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ktsne {

enum class Variant {
    Plain,          // Euclidean metric in both spaces
    KernelHighDim,  // kernel metric in the data space only
    EndToEndKernel  // kernel metric in both spaces
};

enum class InitMethod { PCA, KernelPCA, Given };

struct EmbeddingState {
    Matrix Y;
    Matrix M;  // momentum buffer, starts at zero
    int iter = 0;
    bool exaggerating = false;
};

/// Per-iteration view handed to an optional observer; P is the affinity
/// matrix the gradient actually used (exaggerated during the first phase).
struct IterationView {
    const EmbeddingState& state;
    const Matrix& P;
    double kl = -1.0;  // true (unexaggerated) KL when sampled, else -1
};

struct OptimizerConfig {
    Variant variant = Variant::Plain;
    Index target_dim = 2;
    double perplexity = 30.0;
    KernelSpec kernel = KernelSpec::rbf(1.0);
    int n_iter = 1000;
    double early_exaggeration_factor = 12.0;
    int early_exaggeration_iters = 250;
    std::optional<double> learning_rate;  // nullopt: max(n / exaggeration / 4, 50)
    double momentum = 0.5;
    std::optional<double> late_momentum;  // applied after exaggeration when set
    InitMethod init = InitMethod::PCA;
    std::optional<double> alpha;  // nullopt: max(target_dim - 1, 1)
    std::uint64_t seed = 0;
    bool fd_gradient = false;  // finite-difference kernel pair gradients
    std::optional<Matrix> given_init;  // required when init == Given

    // Test/diagnostic hook, not part of any stable interface.
    std::function<void(const IterationView&)> observer;

    double resolved_learning_rate(Index n) const;
    double resolved_alpha() const;
    void validate(Index n, Index d) const;
};

struct KlSample {
    int iter;
    double kl;
};

struct ReductionResult {
    Matrix Y;
    std::vector<KlSample> kl_trace;  // sampled every 10 iterations + final
    OptimizerConfig config;
    double resolved_learning_rate = 0.0;
    double resolved_alpha = 0.0;
    double affinity_seconds = 0.0;
    double loop_seconds = 0.0;
    double kernel_stage_seconds = 0.0;  // low-dim kernel matrices (end-to-end)
    double total_seconds = 0.0;

    double initial_kl() const { return kl_trace.front().kl; }
    double final_kl() const { return kl_trace.back().kl; }
};

/// Projection of mean-centered X onto its top-m principal directions
/// (thin SVD, largest-magnitude loading made positive per component).
Matrix pca_scores(const Matrix& X, Index m);

/// pca_scores rescaled so coordinate 0 has standard deviation 1e-4; tiny
/// initializations keep early exaggeration stable.
Matrix pca_init(const Matrix& X, Index m);

/// Top-m eigenpairs of the double-centered Gram matrix, coordinates scaled by
/// sqrt(eigenvalue); eigenvalues below 1e-12 yield zero coordinates.
Matrix kernel_pca_scores(const KernelSpec& spec, const Matrix& X, Index m);

Matrix kernel_pca_init(const KernelSpec& spec, const Matrix& X, Index m);

/// KL(P || Q) summed over ordered pairs; q is floored at 1e-12 inside the log
/// and terms with p <= 1e-12 contribute nothing.
double kl_cost(const JointAffinities& P, const JointAffinities& Q);

/// dC/dy_i = 4 sum_j (p_ij - q_ij) (1 + |y_i - y_j|^2)^-1 (y_i - y_j).
Matrix tsne_gradient(const JointAffinities& P, const JointAffinities& Q,
                     const Matrix& Y);

/// Lifted-space gradient:
/// dC/dy_i = ((alpha+1)/alpha) sum_j (p_ij - q_ij) (1 + d_ij/alpha)^-1
///           * d[k(y_i,y_i) - 2 k(y_i,y_j)]/dy_i
/// with d_ij the kernel-trick squared distances of Y. `use_fd` swaps the
/// analytic pair gradient for central differences.
Matrix e2e_kernel_gradient(const JointAffinities& P, const JointAffinities& Q,
                           const Matrix& Y, const KernelSpec& spec, double alpha,
                           bool use_fd = false);

/// Full optimization: affinities, init, and the momentum gradient-descent
/// loop with early exaggeration.
ReductionResult run_reduction(const Matrix& X, const OptimizerConfig& config);

}  // namespace ktsne
