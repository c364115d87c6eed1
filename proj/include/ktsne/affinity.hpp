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

#include "ktsne/kernels.hpp"
#include "ktsne/types.hpp"

namespace ktsne {

// Floor applied to joint input probabilities (and to Q inside the KL
// divergence) so log terms stay finite.
inline constexpr double kProbabilityFloor = 1e-12;

/// Row-stochastic p_{j|i} with the per-point Gaussian bandwidths that realize
/// the requested perplexity. values(i, i) is zero and each row sums to 1.
struct ConditionalAffinities {
    Matrix values;
    Vector sigmas;
};

/// Symmetric pairwise probabilities (P or Q): zero diagonal, total sum 1.
/// `floor` records the clamp applied to the entries (0 when none was).
struct JointAffinities {
    Matrix values;
    double floor = 0.0;
};

/// Calibrates one Gaussian bandwidth per row of the squared-distance matrix D
/// by bisecting beta = 1/(2 sigma^2) until 2^H(row) matches the perplexity
/// (tolerance 1e-5, at most 50 steps, bracket grown by doubling/halving from
/// beta = 1). Rows are normalized excluding the diagonal.
ConditionalAffinities conditional_affinities(const Matrix& D, double perplexity);

/// p_ij = (p_{j|i} + p_{i|j}) / (2n), entries clamped below by 1e-12.
JointAffinities symmetrize(const ConditionalAffinities& conditionals);

/// Student-t map affinities q_ij = (1 + |y_i - y_j|^2)^-1 / Z with Z summed
/// over all ordered pairs.
JointAffinities student_t_affinities(const Matrix& Y);

/// Lifted-space Student-t affinities with alpha degrees of freedom:
/// q_ij proportional to (1 + d_ij / alpha)^(-(alpha+1)/2) where d_ij is the
/// kernel-trick squared distance between y_i and y_j.
JointAffinities kernel_student_t_affinities(const KernelSpec& spec,
                                            const Matrix& Y, double alpha);

namespace detail {

// Pairwise squared Euclidean distances, computed directly (not via the
// kernel trick), symmetric with zero diagonal.
Matrix squared_euclidean_matrix(const Matrix& Y);

// Student-t numerators (1 + d)^-1 for a precomputed squared-distance matrix.
Matrix student_t_numerators(const Matrix& dist);

// q from precomputed (1 + d/alpha)^(-(alpha+1)/2) style numerators.
JointAffinities normalize_numerators(const Matrix& num);

// Heavy-tail numerators for kernel distances: (1 + d/alpha)^(-(alpha+1)/2).
Matrix heavy_tail_numerators(const Matrix& dist, double alpha);

// (1 + d/alpha)^-1 weights used by the lifted-space gradient.
Matrix heavy_tail_weights(const Matrix& dist, double alpha);

}  // namespace detail

}  // namespace ktsne
