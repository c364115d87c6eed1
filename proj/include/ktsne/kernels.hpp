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

#include "ktsne/types.hpp"

#include <cstdint>

namespace ktsne {

enum class KernelKind { RBF, Linear };

/// Kernel function k(u,v) = phi(u)'phi(v). RBF: exp(-gamma * |u-v|^2),
/// Linear: u'v (the equivalence oracle tying kernelized pipelines back to
/// their Euclidean counterparts).
struct KernelSpec {
    KernelKind kind = KernelKind::RBF;
    double gamma = 1.0;  // RBF lengthscale, ignored for Linear

    static KernelSpec rbf(double gamma) { return {KernelKind::RBF, gamma}; }
    static KernelSpec linear() { return {KernelKind::Linear, 0.0}; }

    // Throws a parameter error when gamma <= 0 for an RBF kernel.
    void validate() const;
};

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& u,
                   const Eigen::Ref<const Vector>& v);

/// Full Gram matrix K[i][j] = k(x_i, x_j). Upper triangle is computed and
/// mirrored, so the result is exactly symmetric; the RBF diagonal is exactly 1.
Matrix gram_matrix(const KernelSpec& spec, const Matrix& X);

/// Squared distances in the lifted space, obtained without materializing phi:
/// D[i][j] = K[i][i] - 2 K[i][j] + K[j][j]. Diagonal forced to zero, round-off
/// negatives clamped to zero.
Matrix kernel_distance_matrix(const KernelSpec& spec, const Matrix& X);

/// Same construction starting from an existing Gram matrix.
Matrix kernel_distances_from_gram(const Matrix& K);

/// Low-rank Gram reconstruction from a uniformly sampled landmark subset,
/// K~ = K_nm pinv(K_mm) K_nm'. The pseudo-inverse truncates eigenvalues below
/// 1e-10 times the largest one, so clustered landmarks stay harmless. Result
/// is symmetric positive-semidefinite by construction.
Matrix nystrom_gram(const KernelSpec& spec, const Matrix& X, Index m_landmarks,
                    std::uint64_t seed);

/// Random Fourier features for the RBF kernel: rows are
/// sqrt(2/r) * cos(w'x + b) with w ~ N(0, 2*gamma*I) and b ~ U[0, 2pi), so
/// E[phi_r(x)'phi_r(y)] = k(x,y).
Matrix rff_features(const KernelSpec& spec, const Matrix& X, Index r,
                    std::uint64_t seed);

/// d/dy_i of the scalar k(y_i,y_i) - 2 k(y_i,y_j).
/// RBF: 4*gamma*(y_i - y_j)*k(y_i,y_j); Linear: 2*(y_i - y_j).
Vector kernel_pair_gradient(const KernelSpec& spec,
                            const Eigen::Ref<const Vector>& y_i,
                            const Eigen::Ref<const Vector>& y_j);

/// Central-difference version of kernel_pair_gradient, exact for quadratics.
Vector kernel_pair_gradient_fd(const KernelSpec& spec,
                               const Eigen::Ref<const Vector>& y_i,
                               const Eigen::Ref<const Vector>& y_j,
                               double h = 1e-5);

}  // namespace ktsne
