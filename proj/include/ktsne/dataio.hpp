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

#include "ktsne/metrics.hpp"
#include "ktsne/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ktsne {

struct LabeledDataset {
    Matrix X;
    std::optional<std::vector<int>> labels;  // size n when present
    std::string name;
};

/// Isotropic Gaussian blobs: cluster centers drawn uniformly from
/// [-10, 10]^d, points assigned round-robin (point i belongs to cluster
/// i mod clusters) and scattered around their center with the given standard
/// deviation. Labels are the cluster indices.
LabeledDataset generate_blobs(Index n, Index d, Index clusters, double spread,
                              std::uint64_t seed);

/// Comma-delimited numeric table with an optional header row. label_column
/// selects a column by header name or zero-based index; NaN/Inf cells and
/// ragged rows are rejected with their location.
LabeledDataset load_csv(const std::string& path,
                        const std::optional<std::string>& label_column = std::nullopt);

/// IDX image container (magic 0x00000803, big-endian dims). Each image is
/// flattened to one row with pixel bytes scaled to [0, 1]. A labels file
/// (magic 0x00000801) must carry exactly one label per image.
LabeledDataset load_idx(const std::string& images_path,
                        const std::optional<std::string>& labels_path = std::nullopt);

/// Seeded row subsample without replacement, labels carried along.
LabeledDataset subsample(const LabeledDataset& data, Index count, std::uint64_t seed);

/// In-place per-feature standardization: (x - mean) / std, zero-variance
/// columns left centered.
void standardize_features(Matrix& X);

void write_embedding_csv(const Matrix& Y, const std::optional<std::vector<int>>& labels,
                         const std::string& path);

void write_dataset_csv(const LabeledDataset& data, const std::string& path);

void write_report_json(const TrustworthinessReport& report, const std::string& name,
                       const std::string& path);

/// Static 800x800 scatter plot, data rescaled to fit with a 5% margin, one
/// fill color per label class (10-color palette, cycled). Requires a
/// 2-dimensional embedding.
void render_scatter_svg(const Matrix& Y, const std::optional<std::vector<int>>& labels,
                        const std::string& path);

}  // namespace ktsne
