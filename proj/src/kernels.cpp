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
#include "ktsne/kernels.hpp"

#include "ktsne/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ktsne {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_same_dim(const Eigen::Ref<const Vector>& u,
                    const Eigen::Ref<const Vector>& v) {
    if (u.size() != v.size()) {
        throw_error(ErrorKind::Dimension,
                    "kernel arguments have mismatched dimensions: " +
                        std::to_string(u.size()) + " vs " + std::to_string(v.size()));
    }
}

void check_data_matrix(const Matrix& X) {
    if (X.rows() < 2) {
        throw_error(ErrorKind::Parameter, "need at least 2 data points, got " +
                                              std::to_string(X.rows()));
    }
    if (!X.allFinite()) {
        throw_error(ErrorKind::Input, "data matrix contains non-finite values");
    }
}

}  // namespace

void KernelSpec::validate() const {
    if (kind == KernelKind::RBF && !(gamma > 0.0)) {
        throw_error(ErrorKind::Parameter,
                    "RBF gamma must be positive, got " + std::to_string(gamma));
    }
}

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& u,
                   const Eigen::Ref<const Vector>& v) {
    spec.validate();
    check_same_dim(u, v);
    switch (spec.kind) {
        case KernelKind::RBF:
            return std::exp(-spec.gamma * (u - v).squaredNorm());
        case KernelKind::Linear:
            return u.dot(v);
    }
    throw_error(ErrorKind::Internal, "unknown kernel kind");
}

Matrix gram_matrix(const KernelSpec& spec, const Matrix& X) {
    spec.validate();
    check_data_matrix(X);
    const Index n = X.rows();
    Matrix K(n, n);
    for (Index i = 0; i < n; ++i) {
        K(i, i) = spec.kind == KernelKind::RBF ? 1.0 : X.row(i).squaredNorm();
        for (Index j = i + 1; j < n; ++j) {
            double k;
            if (spec.kind == KernelKind::RBF) {
                k = std::exp(-spec.gamma * (X.row(i) - X.row(j)).squaredNorm());
            } else {
                k = X.row(i).dot(X.row(j));
            }
            K(i, j) = k;
            K(j, i) = k;
        }
    }
    return K;
}

Matrix kernel_distances_from_gram(const Matrix& K) {
    const Index n = K.rows();
    Matrix D(n, n);
    for (Index i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double d = std::max(K(i, i) - 2.0 * K(i, j) + K(j, j), 0.0);
            D(i, j) = d;
            D(j, i) = d;
        }
    }
    return D;
}

Matrix kernel_distance_matrix(const KernelSpec& spec, const Matrix& X) {
    return kernel_distances_from_gram(gram_matrix(spec, X));
}

Matrix nystrom_gram(const KernelSpec& spec, const Matrix& X, Index m_landmarks,
                    std::uint64_t seed) {
    spec.validate();
    check_data_matrix(X);
    const Index n = X.rows();
    if (m_landmarks < 1 || m_landmarks > n) {
        throw_error(ErrorKind::Parameter,
                    "landmark count must be in [1, " + std::to_string(n) +
                        "], got " + std::to_string(m_landmarks));
    }

    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    std::vector<Index> landmarks;
    landmarks.reserve(static_cast<std::size_t>(m_landmarks));
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(landmarks),
                static_cast<std::size_t>(m_landmarks), rng);

    Matrix L(m_landmarks, X.cols());
    for (Index t = 0; t < m_landmarks; ++t) {
        L.row(t) = X.row(landmarks[static_cast<std::size_t>(t)]);
    }

    Matrix C(n, m_landmarks);  // K_nm
    for (Index i = 0; i < n; ++i) {
        for (Index t = 0; t < m_landmarks; ++t) {
            C(i, t) = eval_kernel(spec, X.row(i).transpose(), L.row(t).transpose());
        }
    }
    Matrix W(m_landmarks, m_landmarks);  // K_mm
    for (Index a = 0; a < m_landmarks; ++a) {
        for (Index b = a; b < m_landmarks; ++b) {
            const double k =
                eval_kernel(spec, L.row(a).transpose(), L.row(b).transpose());
            W(a, b) = k;
            W(b, a) = k;
        }
    }

    // pinv(W) through the eigendecomposition keeps K~ = B B' exactly
    // symmetric PSD. W is symmetric PSD up to round-off, so eigenvalues and
    // singular values coincide and the relative cutoff applies directly.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(W);
    const Vector evals = eig.eigenvalues();
    const double cutoff = 1e-10 * std::max(evals.cwiseAbs().maxCoeff(), 0.0);
    std::vector<Index> kept;
    for (Index c = 0; c < evals.size(); ++c) {
        if (evals(c) > cutoff && evals(c) > 0.0) kept.push_back(c);
    }
    Matrix B(n, static_cast<Index>(kept.size()));
    for (Index c = 0; c < static_cast<Index>(kept.size()); ++c) {
        B.col(c) = C * eig.eigenvectors().col(kept[static_cast<std::size_t>(c)]) /
                   std::sqrt(evals(kept[static_cast<std::size_t>(c)]));
    }
    return B * B.transpose();
}

Matrix rff_features(const KernelSpec& spec, const Matrix& X, Index r,
                    std::uint64_t seed) {
    spec.validate();
    if (spec.kind != KernelKind::RBF) {
        throw_error(ErrorKind::Unsupported,
                    "random Fourier features are defined for the RBF kernel only");
    }
    check_data_matrix(X);
    if (r < 1) {
        throw_error(ErrorKind::Parameter,
                    "feature count must be >= 1, got " + std::to_string(r));
    }

    const Index d = X.cols();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(2.0 * spec.gamma));
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);

    Matrix omega(d, r);
    Vector bias(r);
    for (Index c = 0; c < r; ++c) {
        for (Index k = 0; k < d; ++k) omega(k, c) = gauss(rng);
        bias(c) = unif(rng);
    }

    const double scale = std::sqrt(2.0 / static_cast<double>(r));
    Matrix F = X * omega;
    F.rowwise() += bias.transpose();
    return scale * F.array().cos().matrix();
}

Vector kernel_pair_gradient(const KernelSpec& spec,
                            const Eigen::Ref<const Vector>& y_i,
                            const Eigen::Ref<const Vector>& y_j) {
    spec.validate();
    check_same_dim(y_i, y_j);
    switch (spec.kind) {
        case KernelKind::RBF: {
            const double k = std::exp(-spec.gamma * (y_i - y_j).squaredNorm());
            return 4.0 * spec.gamma * k * (y_i - y_j);
        }
        case KernelKind::Linear:
            return 2.0 * (y_i - y_j);
    }
    throw_error(ErrorKind::Internal, "unknown kernel kind");
}

Vector kernel_pair_gradient_fd(const KernelSpec& spec,
                               const Eigen::Ref<const Vector>& y_i,
                               const Eigen::Ref<const Vector>& y_j, double h) {
    spec.validate();
    check_same_dim(y_i, y_j);
    if (!(h > 0.0)) {
        throw_error(ErrorKind::Parameter,
                    "finite-difference step must be positive, got " + std::to_string(h));
    }
    const auto g = [&](const Vector& y) {
        return eval_kernel(spec, y, y) - 2.0 * eval_kernel(spec, y, y_j);
    };
    Vector grad(y_i.size());
    Vector y = y_i;
    for (Index c = 0; c < y_i.size(); ++c) {
        const double orig = y(c);
        y(c) = orig + h;
        const double fp = g(y);
        y(c) = orig - h;
        const double fm = g(y);
        y(c) = orig;
        grad(c) = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace ktsne
