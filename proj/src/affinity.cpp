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
#include "ktsne/affinity.hpp"

#include "ktsne/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ktsne {

namespace {

struct RowCalibration {
    Vector probs;  // normalized p_{j|i}, entry i zero
    double beta;   // 1 / (2 sigma^2)
};

// Perplexity of the row distribution p_j ~ exp(-beta * d_j), j != i.
// Distances are shifted by their row minimum before exponentiation; the
// distribution is invariant under the shift and the largest term becomes 1,
// so the total never underflows to zero.
double row_perplexity(const Vector& shifted, double beta, Vector& probs_out) {
    probs_out = (-beta * shifted.array()).exp();
    const double total = probs_out.sum();
    const double weighted = shifted.dot(probs_out);
    probs_out /= total;
    // H in nats for p ~ exp(-beta d): log(total) + beta * E[d]; perplexity
    // 2^(H in bits) equals exp(H in nats).
    const double entropy = std::log(total) + beta * weighted / total;
    return std::exp(entropy);
}

RowCalibration calibrate_row(const Vector& distances, double perplexity) {
    const Index m = distances.size();
    const double shift = distances.minCoeff();
    Vector shifted = distances.array() - shift;

    double beta = 1.0;
    double beta_lo = 0.0;
    double beta_hi = std::numeric_limits<double>::infinity();
    Vector probs(m);

    for (int step = 0; step < 50; ++step) {
        const double perp = row_perplexity(shifted, beta, probs);
        const double diff = perp - perplexity;
        if (std::abs(diff) < 1e-5) return {probs, beta};
        if (diff > 0.0) {
            // too flat: sharpen
            beta_lo = beta;
            beta = std::isinf(beta_hi) ? beta * 2.0 : 0.5 * (beta + beta_hi);
        } else {
            beta_hi = beta;
            beta = beta_lo == 0.0 ? beta * 0.5 : 0.5 * (beta + beta_lo);
        }
    }
    row_perplexity(shifted, beta, probs);  // keep probs consistent with beta
    return {probs, beta};
}

}  // namespace

ConditionalAffinities conditional_affinities(const Matrix& D, double perplexity) {
    const Index n = D.rows();
    if (n < 2 || D.cols() != n) {
        throw_error(ErrorKind::Parameter, "distance matrix must be square with n >= 2");
    }
    if (!(perplexity > 1.0) || !(perplexity < static_cast<double>(n))) {
        throw_error(ErrorKind::Parameter,
                    "perplexity must lie in (1, n); got " + std::to_string(perplexity) +
                        " for n = " + std::to_string(n));
    }

    ConditionalAffinities out;
    out.values = Matrix::Zero(n, n);
    out.sigmas = Vector(n);

    Vector row(n - 1);
    for (Index i = 0; i < n; ++i) {
        Index c = 0;
        for (Index j = 0; j < n; ++j) {
            if (j != i) row(c++) = D(i, j);
        }
        if (row.maxCoeff() <= 0.0) {
            throw_error(ErrorKind::Input,
                        "degenerate input: all distances from point " +
                            std::to_string(i) + " are zero");
        }
        const RowCalibration cal = calibrate_row(row, perplexity);
        out.sigmas(i) = std::sqrt(1.0 / (2.0 * cal.beta));
        c = 0;
        for (Index j = 0; j < n; ++j) {
            if (j != i) out.values(i, j) = cal.probs(c++);
        }
    }
    return out;
}

JointAffinities symmetrize(const ConditionalAffinities& conditionals) {
    const Matrix& Pc = conditionals.values;
    const Index n = Pc.rows();
    JointAffinities joint;
    joint.floor = kProbabilityFloor;
    joint.values = Matrix::Zero(n, n);
    const double denom = 2.0 * static_cast<double>(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double p = std::max((Pc(i, j) + Pc(j, i)) / denom, kProbabilityFloor);
            joint.values(i, j) = p;
            joint.values(j, i) = p;
        }
    }
    return joint;
}

JointAffinities student_t_affinities(const Matrix& Y) {
    if (Y.rows() < 2) {
        throw_error(ErrorKind::Parameter, "need at least 2 embedded points");
    }
    return detail::normalize_numerators(
        detail::student_t_numerators(detail::squared_euclidean_matrix(Y)));
}

JointAffinities kernel_student_t_affinities(const KernelSpec& spec,
                                            const Matrix& Y, double alpha) {
    spec.validate();
    if (!(alpha >= 1.0)) {
        throw_error(ErrorKind::Parameter,
                    "degrees of freedom must be >= 1, got " + std::to_string(alpha));
    }
    return detail::normalize_numerators(detail::heavy_tail_numerators(
        kernel_distance_matrix(spec, Y), alpha));
}

namespace detail {

Matrix squared_euclidean_matrix(const Matrix& Y) {
    const Index n = Y.rows();
    Matrix D(n, n);
    for (Index i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double d = (Y.row(i) - Y.row(j)).squaredNorm();
            D(i, j) = d;
            D(j, i) = d;
        }
    }
    return D;
}

Matrix student_t_numerators(const Matrix& dist) {
    const Index n = dist.rows();
    Matrix num(n, n);
    for (Index i = 0; i < n; ++i) {
        num(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double v = 1.0 / (1.0 + dist(i, j));
            num(i, j) = v;
            num(j, i) = v;
        }
    }
    return num;
}

Matrix heavy_tail_numerators(const Matrix& dist, double alpha) {
    const Index n = dist.rows();
    const double exponent = -(alpha + 1.0) / 2.0;
    Matrix num(n, n);
    for (Index i = 0; i < n; ++i) {
        num(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double base = 1.0 + dist(i, j) / alpha;
            const double v = exponent == -1.0 ? 1.0 / base : std::pow(base, exponent);
            num(i, j) = v;
            num(j, i) = v;
        }
    }
    return num;
}

Matrix heavy_tail_weights(const Matrix& dist, double alpha) {
    const Index n = dist.rows();
    Matrix w(n, n);
    for (Index i = 0; i < n; ++i) {
        w(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double v = 1.0 / (1.0 + dist(i, j) / alpha);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

JointAffinities normalize_numerators(const Matrix& num) {
    const Index n = num.rows();
    double z = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) z += num(i, j);
    }
    z *= 2.0;  // ordered pairs
    JointAffinities joint;
    joint.values = num / z;
    return joint;
}

}  // namespace detail

}  // namespace ktsne
