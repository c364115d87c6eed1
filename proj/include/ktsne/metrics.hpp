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
#include <vector>

namespace ktsne {

struct TrustworthinessReport {
    std::vector<std::size_t> k_values;
    std::vector<double> scores;  // one per k, each in [0, 1]
    std::size_t n = 0;           // points per subsample
    std::size_t repeats = 1;
};

/// T(k) = 1 - 2/(n k (2n - 3k - 1)) * sum_i sum_{j in U_k(i)} (rank_X(i,j) - k)
/// where U_k(i) holds the points inside i's k-neighborhood in Y but outside it
/// in X, and rank_X counts neighbors of i in X starting at 1. Euclidean
/// distances, ties broken by ascending index. Requires 1 <= k < n/2.
double trustworthiness(const Matrix& X, const Matrix& Y, std::size_t k);

/// Averages per-k trustworthiness over `repeats` seeded row subsamples (the
/// same rows taken from X and Y).
TrustworthinessReport trustworthiness_curve(const Matrix& X, const Matrix& Y,
                                            const std::vector<std::size_t>& k_values,
                                            std::size_t repeats,
                                            std::size_t subsample,
                                            std::uint64_t seed);

}  // namespace ktsne
