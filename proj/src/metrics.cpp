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
#include "ktsne/metrics.hpp"

#include "ktsne/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ktsne {

namespace {

// Neighbor order of each point: indices sorted by (distance, index), self
// excluded. Row i of the result lists the other points nearest-first.
std::vector<std::vector<Index>> neighbor_order(const Matrix& pts) {
    const Index n = pts.rows();
    std::vector<std::vector<Index>> order(static_cast<std::size_t>(n));
    std::vector<std::pair<double, Index>> keyed(static_cast<std::size_t>(n - 1));
    for (Index i = 0; i < n; ++i) {
        std::size_t c = 0;
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            keyed[c++] = {(pts.row(i) - pts.row(j)).squaredNorm(), j};
        }
        std::sort(keyed.begin(), keyed.end());
        auto& row = order[static_cast<std::size_t>(i)];
        row.resize(keyed.size());
        for (std::size_t t = 0; t < keyed.size(); ++t) row[t] = keyed[t].second;
    }
    return order;
}

void check_k(std::size_t k, Index n) {
    if (k < 1 || 2 * k >= static_cast<std::size_t>(n)) {
        throw_error(ErrorKind::Parameter,
                    "neighborhood size k must satisfy 1 <= k < n/2; got k = " +
                        std::to_string(k) + " with n = " + std::to_string(n));
    }
}

}  // namespace

double trustworthiness(const Matrix& X, const Matrix& Y, std::size_t k) {
    const Index n = X.rows();
    if (Y.rows() != n) {
        throw_error(ErrorKind::Input,
                    "data and embedding row counts differ: " + std::to_string(n) +
                        " vs " + std::to_string(Y.rows()));
    }
    check_k(k, n);

    const auto order_x = neighbor_order(X);
    const auto order_y = neighbor_order(Y);

    // rank_x[i][j] = neighbor rank of j seen from i in X, nearest = 1
    std::vector<std::vector<std::size_t>> rank_x(
        static_cast<std::size_t>(n), std::vector<std::size_t>(static_cast<std::size_t>(n), 0));
    for (Index i = 0; i < n; ++i) {
        const auto& row = order_x[static_cast<std::size_t>(i)];
        for (std::size_t r = 0; r < row.size(); ++r) {
            rank_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(row[r])] = r + 1;
        }
    }

    double penalty = 0.0;
    for (Index i = 0; i < n; ++i) {
        const auto& near_y = order_y[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t < k; ++t) {
            const std::size_t r =
                rank_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(near_y[t])];
            if (r > k) penalty += static_cast<double>(r - k);
        }
    }

    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return 1.0 - penalty * 2.0 / (nd * kd * (2.0 * nd - 3.0 * kd - 1.0));
}

TrustworthinessReport trustworthiness_curve(const Matrix& X, const Matrix& Y,
                                            const std::vector<std::size_t>& k_values,
                                            std::size_t repeats,
                                            std::size_t subsample,
                                            std::uint64_t seed) {
    const Index n = X.rows();
    if (Y.rows() != n) {
        throw_error(ErrorKind::Input, "data and embedding row counts differ");
    }
    if (repeats < 1) {
        throw_error(ErrorKind::Parameter, "repeats must be >= 1");
    }
    if (subsample == 0) subsample = static_cast<std::size_t>(n);
    if (subsample < 2 || subsample > static_cast<std::size_t>(n)) {
        throw_error(ErrorKind::Parameter,
                    "subsample must lie in [2, n], got " + std::to_string(subsample));
    }
    if (k_values.empty()) {
        throw_error(ErrorKind::Parameter, "need at least one neighborhood size");
    }
    for (std::size_t c = 0; c < k_values.size(); ++c) {
        check_k(k_values[c], static_cast<Index>(subsample));
        if (c > 0 && k_values[c] <= k_values[c - 1]) {
            throw_error(ErrorKind::Parameter,
                        "neighborhood sizes must be strictly increasing");
        }
    }

    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    std::mt19937_64 rng(seed);

    TrustworthinessReport report;
    report.k_values = k_values;
    report.scores.assign(k_values.size(), 0.0);
    report.n = subsample;
    report.repeats = repeats;

    for (std::size_t rep = 0; rep < repeats; ++rep) {
        std::vector<Index> rows;
        rows.reserve(subsample);
        std::sample(all.begin(), all.end(), std::back_inserter(rows), subsample, rng);
        Matrix Xs(static_cast<Index>(subsample), X.cols());
        Matrix Ys(static_cast<Index>(subsample), Y.cols());
        for (std::size_t t = 0; t < subsample; ++t) {
            Xs.row(static_cast<Index>(t)) = X.row(rows[t]);
            Ys.row(static_cast<Index>(t)) = Y.row(rows[t]);
        }
        for (std::size_t c = 0; c < k_values.size(); ++c) {
            report.scores[c] += trustworthiness(Xs, Ys, k_values[c]);
        }
    }
    for (double& s : report.scores) s /= static_cast<double>(repeats);
    return report;
}

}  // namespace ktsne
