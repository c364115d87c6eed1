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

// Brute-force reference implementations used as test oracles. These are kept
// deliberately naive and independent of the library code paths they check.
#pragma once

#include "ktsne/types.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace oracles {

using ktsne::Index;
using ktsne::Matrix;
using ktsne::Vector;

inline Matrix random_matrix(Index n, Index d, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, scale);
    Matrix X(n, d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) X(i, j) = gauss(rng);
    }
    return X;
}

// Random symmetric joint-probability matrix: zero diagonal, sums to 1.
inline Matrix random_joint(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Matrix P = Matrix::Zero(n, n);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double v = unif(rng);
            P(i, j) = v;
            P(j, i) = v;
            total += 2.0 * v;
        }
    }
    return P / total;
}

inline double kernel_value(bool rbf, double gamma, const Vector& u, const Vector& v) {
    if (!rbf) {
        double dot = 0.0;
        for (Index c = 0; c < u.size(); ++c) dot += u(c) * v(c);
        return dot;
    }
    double d2 = 0.0;
    for (Index c = 0; c < u.size(); ++c) d2 += (u(c) - v(c)) * (u(c) - v(c));
    return std::exp(-gamma * d2);
}

inline Matrix naive_sq_dist(const Matrix& X) {
    const Index n = X.rows();
    Matrix D = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            double d2 = 0.0;
            for (Index c = 0; c < X.cols(); ++c) {
                d2 += (X(i, c) - X(j, c)) * (X(i, c) - X(j, c));
            }
            D(i, j) = d2;
        }
    }
    return D;
}

inline Matrix naive_gram(bool rbf, double gamma, const Matrix& X) {
    const Index n = X.rows();
    Matrix K(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            K(i, j) = kernel_value(rbf, gamma, X.row(i).transpose(), X.row(j).transpose());
        }
    }
    return K;
}

inline Matrix naive_student_t(const Matrix& Y) {
    const Index n = Y.rows();
    Matrix Q = Matrix::Zero(n, n);
    double z = 0.0;
    for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
            if (k == l) continue;
            z += 1.0 / (1.0 + (Y.row(k) - Y.row(l)).squaredNorm());
        }
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            Q(i, j) = 1.0 / (1.0 + (Y.row(i) - Y.row(j)).squaredNorm()) / z;
        }
    }
    return Q;
}

// Heavy-tailed lifted-space map affinities, straight double loop.
inline Matrix naive_kernel_student_t(bool rbf, double gamma, const Matrix& Y,
                                     double alpha) {
    const Index n = Y.rows();
    const auto dist = [&](Index a, Index b) {
        const Vector u = Y.row(a).transpose();
        const Vector v = Y.row(b).transpose();
        return kernel_value(rbf, gamma, u, u) - 2.0 * kernel_value(rbf, gamma, u, v) +
               kernel_value(rbf, gamma, v, v);
    };
    const double expo = -(alpha + 1.0) / 2.0;
    Matrix Q = Matrix::Zero(n, n);
    double z = 0.0;
    for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
            if (k == l) continue;
            z += std::pow(1.0 + dist(k, l) / alpha, expo);
        }
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            Q(i, j) = std::pow(1.0 + dist(i, j) / alpha, expo) / z;
        }
    }
    return Q;
}

inline double naive_kl(const Matrix& P, const Matrix& Q) {
    double kl = 0.0;
    for (Index i = 0; i < P.rows(); ++i) {
        for (Index j = 0; j < P.cols(); ++j) {
            if (i == j) continue;
            if (P(i, j) <= 1e-12) continue;
            kl += P(i, j) * std::log(P(i, j) / std::max(Q(i, j), 1e-12));
        }
    }
    return kl;
}

// Central differences of a scalar cost over every entry of Y.
inline Matrix fd_gradient(const std::function<double(const Matrix&)>& cost,
                          Matrix Y, double h = 1e-5) {
    Matrix G(Y.rows(), Y.cols());
    for (Index i = 0; i < Y.rows(); ++i) {
        for (Index c = 0; c < Y.cols(); ++c) {
            const double orig = Y(i, c);
            Y(i, c) = orig + h;
            const double fp = cost(Y);
            Y(i, c) = orig - h;
            const double fm = cost(Y);
            Y(i, c) = orig;
            G(i, c) = (fp - fm) / (2.0 * h);
        }
    }
    return G;
}

// Rank of j among the neighbors of i (nearest = 1), counting pairs that are
// strictly closer or equally close with a smaller index. No sorting involved.
inline std::size_t neighbor_rank(const Matrix& pts, Index i, Index j) {
    const double dij = (pts.row(i) - pts.row(j)).squaredNorm();
    std::size_t rank = 1;
    for (Index l = 0; l < pts.rows(); ++l) {
        if (l == i || l == j) continue;
        const double dil = (pts.row(i) - pts.row(l)).squaredNorm();
        if (dil < dij || (dil == dij && l < j)) ++rank;
    }
    return rank;
}

inline double brute_trustworthiness(const Matrix& X, const Matrix& Y, std::size_t k) {
    const Index n = X.rows();
    double penalty = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t ry = neighbor_rank(Y, i, j);
            if (ry > k) continue;  // j not in the embedding neighborhood
            const std::size_t rx = neighbor_rank(X, i, j);
            if (rx > k) penalty += static_cast<double>(rx - k);
        }
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return 1.0 - penalty * 2.0 / (nd * kd * (2.0 * nd - 3.0 * kd - 1.0));
}

// Perplexity 2^H of one probability row (entries >= 0, sums to ~1).
inline double row_perplexity(const Vector& p) {
    double h = 0.0;
    for (Index j = 0; j < p.size(); ++j) {
        if (p(j) > 0.0) h -= p(j) * std::log2(p(j));
    }
    return std::pow(2.0, h);
}

inline double rel_error(const Matrix& got, const Matrix& want) {
    const double denom = std::max(want.norm(), 1e-300);
    return (got - want).norm() / denom;
}

}  // namespace oracles
