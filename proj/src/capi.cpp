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
#include "ktsne.h"

#include "ktsne/dataio.hpp"
#include "ktsne/embedding.hpp"
#include "ktsne/error.hpp"
#include "ktsne/metrics.hpp"

#include <cstring>
#include <exception>
#include <optional>
#include <string>
#include <vector>

struct ktsne_dataset {
    ktsne::LabeledDataset data;
};

struct ktsne_result {
    ktsne::ReductionResult result;
};

struct ktsne_report {
    ktsne::TrustworthinessReport report;
    std::string name;
};

namespace {

thread_local std::string g_last_error;

ktsne_status status_from_kind(ktsne::ErrorKind kind) {
    using ktsne::ErrorKind;
    switch (kind) {
        case ErrorKind::Parameter: return KTSNE_ERR_PARAMETER;
        case ErrorKind::Dimension: return KTSNE_ERR_DIMENSION;
        case ErrorKind::Input: return KTSNE_ERR_INPUT;
        case ErrorKind::Format: return KTSNE_ERR_FORMAT;
        case ErrorKind::Io: return KTSNE_ERR_IO;
        case ErrorKind::Divergence: return KTSNE_ERR_DIVERGENCE;
        case ErrorKind::Unsupported: return KTSNE_ERR_UNSUPPORTED;
        case ErrorKind::Internal: return KTSNE_ERR_INTERNAL;
    }
    return KTSNE_ERR_INTERNAL;
}

ktsne_status fail(ktsne_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Run `fn` and translate exceptions into status codes.
template <typename Fn>
ktsne_status guarded(Fn&& fn) {
    try {
        fn();
        return KTSNE_OK;
    } catch (const ktsne::Error& e) {
        return fail(status_from_kind(e.kind()), e.what());
    } catch (const std::exception& e) {
        return fail(KTSNE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(KTSNE_ERR_INTERNAL, "unknown error");
    }
}

ktsne_status require(bool ok, const char* what) {
    return ok ? KTSNE_OK : fail(KTSNE_ERR_PARAMETER, what);
}

ktsne::OptimizerConfig to_core_config(const ktsne_config& c) {
    ktsne::OptimizerConfig cfg;
    switch (c.variant) {
        case KTSNE_VARIANT_PLAIN: cfg.variant = ktsne::Variant::Plain; break;
        case KTSNE_VARIANT_KERNEL: cfg.variant = ktsne::Variant::KernelHighDim; break;
        case KTSNE_VARIANT_E2E: cfg.variant = ktsne::Variant::EndToEndKernel; break;
        default: ktsne::throw_error(ktsne::ErrorKind::Parameter, "unknown variant");
    }
    cfg.target_dim = c.target_dim;
    cfg.perplexity = c.perplexity;
    switch (c.kernel) {
        case KTSNE_KERNEL_RBF: cfg.kernel = ktsne::KernelSpec::rbf(c.gamma); break;
        case KTSNE_KERNEL_LINEAR: cfg.kernel = ktsne::KernelSpec::linear(); break;
        default: ktsne::throw_error(ktsne::ErrorKind::Parameter, "unknown kernel kind");
    }
    cfg.n_iter = c.n_iter;
    cfg.early_exaggeration_factor = c.early_exaggeration;
    cfg.early_exaggeration_iters = c.early_exaggeration_iters;
    if (c.learning_rate > 0.0) cfg.learning_rate = c.learning_rate;
    cfg.momentum = c.momentum;
    if (c.late_momentum >= 0.0) cfg.late_momentum = c.late_momentum;
    switch (c.init) {
        case KTSNE_INIT_PCA: cfg.init = ktsne::InitMethod::PCA; break;
        case KTSNE_INIT_KPCA: cfg.init = ktsne::InitMethod::KernelPCA; break;
        default: ktsne::throw_error(ktsne::ErrorKind::Parameter, "unknown init method");
    }
    if (c.alpha > 0.0) cfg.alpha = c.alpha;
    cfg.seed = c.seed;
    cfg.fd_gradient = c.use_fd_gradient != 0;
    return cfg;
}

std::optional<std::vector<int>> labels_of(const ktsne_dataset* d) {
    if (d == nullptr) return std::nullopt;
    return d->data.labels;
}

}  // namespace

extern "C" {

void ktsne_config_defaults(ktsne_config* config) {
    if (config == nullptr) return;
    config->variant = KTSNE_VARIANT_PLAIN;
    config->target_dim = 2;
    config->perplexity = 30.0;
    config->kernel = KTSNE_KERNEL_RBF;
    config->gamma = 1.0;
    config->n_iter = 1000;
    config->early_exaggeration = 12.0;
    config->early_exaggeration_iters = 250;
    config->learning_rate = 0.0;
    config->momentum = 0.5;
    config->late_momentum = -1.0;
    config->init = KTSNE_INIT_PCA;
    config->alpha = 0.0;
    config->seed = 0;
    config->use_fd_gradient = 0;
}

const char* ktsne_last_error(void) { return g_last_error.c_str(); }

const char* ktsne_version(void) { return "0.1.0"; }

ktsne_status ktsne_dataset_from_csv(const char* path, const char* label_column,
                                    ktsne_dataset** out) {
    if (auto s = require(path && out, "null argument")) return s;
    return guarded([&] {
        std::optional<std::string> label;
        if (label_column != nullptr) label = label_column;
        *out = new ktsne_dataset{ktsne::load_csv(path, label)};
    });
}

ktsne_status ktsne_dataset_from_idx(const char* images_path,
                                    const char* labels_path, ktsne_dataset** out) {
    if (auto s = require(images_path && out, "null argument")) return s;
    return guarded([&] {
        std::optional<std::string> labels;
        if (labels_path != nullptr) labels = labels_path;
        *out = new ktsne_dataset{ktsne::load_idx(images_path, labels)};
    });
}

ktsne_status ktsne_dataset_from_buffer(const double* values, size_t n, size_t d,
                                       const int* labels, ktsne_dataset** out) {
    if (auto s = require(values && out && n > 0 && d > 0, "null or empty buffer"))
        return s;
    return guarded([&] {
        ktsne::LabeledDataset data;
        data.X.resize(static_cast<ktsne::Index>(n), static_cast<ktsne::Index>(d));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < d; ++j) {
                data.X(static_cast<ktsne::Index>(i), static_cast<ktsne::Index>(j)) =
                    values[i * d + j];
            }
        }
        if (!data.X.allFinite()) {
            ktsne::throw_error(ktsne::ErrorKind::Input,
                               "buffer contains non-finite values");
        }
        if (labels != nullptr) {
            data.labels = std::vector<int>(labels, labels + n);
        }
        data.name = "buffer";
        *out = new ktsne_dataset{std::move(data)};
    });
}

ktsne_status ktsne_dataset_blobs(size_t n, size_t d, size_t clusters,
                                 double spread, uint64_t seed,
                                 ktsne_dataset** out) {
    if (auto s = require(out != nullptr, "null output")) return s;
    return guarded([&] {
        *out = new ktsne_dataset{ktsne::generate_blobs(
            static_cast<ktsne::Index>(n), static_cast<ktsne::Index>(d),
            static_cast<ktsne::Index>(clusters), spread, seed)};
    });
}

ktsne_status ktsne_dataset_subsample(const ktsne_dataset* data, size_t count,
                                     uint64_t seed, ktsne_dataset** out) {
    if (auto s = require(data && out, "null argument")) return s;
    return guarded([&] {
        *out = new ktsne_dataset{
            ktsne::subsample(data->data, static_cast<ktsne::Index>(count), seed)};
    });
}

ktsne_status ktsne_dataset_standardize(ktsne_dataset* data) {
    if (auto s = require(data != nullptr, "null dataset")) return s;
    return guarded([&] { ktsne::standardize_features(data->data.X); });
}

size_t ktsne_dataset_rows(const ktsne_dataset* data) {
    return data ? static_cast<size_t>(data->data.X.rows()) : 0;
}

size_t ktsne_dataset_cols(const ktsne_dataset* data) {
    return data ? static_cast<size_t>(data->data.X.cols()) : 0;
}

int ktsne_dataset_has_labels(const ktsne_dataset* data) {
    return data && data->data.labels ? 1 : 0;
}

ktsne_status ktsne_dataset_copy_values(const ktsne_dataset* data, double* out) {
    if (auto s = require(data && out, "null argument")) return s;
    const auto& X = data->data.X;
    for (ktsne::Index i = 0; i < X.rows(); ++i) {
        for (ktsne::Index j = 0; j < X.cols(); ++j) {
            out[static_cast<size_t>(i) * static_cast<size_t>(X.cols()) +
                static_cast<size_t>(j)] = X(i, j);
        }
    }
    return KTSNE_OK;
}

ktsne_status ktsne_dataset_copy_labels(const ktsne_dataset* data, int* out) {
    if (auto s = require(data && out, "null argument")) return s;
    if (!data->data.labels) {
        return fail(KTSNE_ERR_INPUT, "dataset has no labels");
    }
    std::memcpy(out, data->data.labels->data(),
                data->data.labels->size() * sizeof(int));
    return KTSNE_OK;
}

ktsne_status ktsne_dataset_write_csv(const ktsne_dataset* data, const char* path) {
    if (auto s = require(data && path, "null argument")) return s;
    return guarded([&] { ktsne::write_dataset_csv(data->data, path); });
}

void ktsne_dataset_free(ktsne_dataset* data) { delete data; }

ktsne_status ktsne_reduce(const ktsne_dataset* data, const ktsne_config* config,
                          ktsne_result** out) {
    if (auto s = require(data && config && out, "null argument")) return s;
    return guarded([&] {
        *out = new ktsne_result{
            ktsne::run_reduction(data->data.X, to_core_config(*config))};
    });
}

size_t ktsne_result_rows(const ktsne_result* result) {
    return result ? static_cast<size_t>(result->result.Y.rows()) : 0;
}

size_t ktsne_result_dim(const ktsne_result* result) {
    return result ? static_cast<size_t>(result->result.Y.cols()) : 0;
}

ktsne_status ktsne_result_copy_embedding(const ktsne_result* result, double* out) {
    if (auto s = require(result && out, "null argument")) return s;
    const auto& Y = result->result.Y;
    for (ktsne::Index i = 0; i < Y.rows(); ++i) {
        for (ktsne::Index j = 0; j < Y.cols(); ++j) {
            out[static_cast<size_t>(i) * static_cast<size_t>(Y.cols()) +
                static_cast<size_t>(j)] = Y(i, j);
        }
    }
    return KTSNE_OK;
}

ktsne_status ktsne_result_embedding_dataset(const ktsne_result* result,
                                            const ktsne_dataset* labels_from,
                                            ktsne_dataset** out) {
    if (auto s = require(result && out, "null argument")) return s;
    return guarded([&] {
        ktsne::LabeledDataset data;
        data.X = result->result.Y;
        data.labels = labels_of(labels_from);
        data.name = "embedding";
        *out = new ktsne_dataset{std::move(data)};
    });
}

size_t ktsne_result_trace_size(const ktsne_result* result) {
    return result ? result->result.kl_trace.size() : 0;
}

ktsne_status ktsne_result_trace(const ktsne_result* result, int* iters,
                                double* kl) {
    if (auto s = require(result && iters && kl, "null argument")) return s;
    for (size_t t = 0; t < result->result.kl_trace.size(); ++t) {
        iters[t] = result->result.kl_trace[t].iter;
        kl[t] = result->result.kl_trace[t].kl;
    }
    return KTSNE_OK;
}

double ktsne_result_final_kl(const ktsne_result* result) {
    return result ? result->result.final_kl() : -1.0;
}

double ktsne_result_resolved_learning_rate(const ktsne_result* result) {
    return result ? result->result.resolved_learning_rate : 0.0;
}

double ktsne_result_resolved_alpha(const ktsne_result* result) {
    return result ? result->result.resolved_alpha : 0.0;
}

double ktsne_result_affinity_seconds(const ktsne_result* result) {
    return result ? result->result.affinity_seconds : 0.0;
}

double ktsne_result_loop_seconds(const ktsne_result* result) {
    return result ? result->result.loop_seconds : 0.0;
}

double ktsne_result_kernel_stage_seconds(const ktsne_result* result) {
    return result ? result->result.kernel_stage_seconds : 0.0;
}

double ktsne_result_total_seconds(const ktsne_result* result) {
    return result ? result->result.total_seconds : 0.0;
}

ktsne_status ktsne_result_write_csv(const ktsne_result* result,
                                    const ktsne_dataset* labels_from,
                                    const char* path) {
    if (auto s = require(result && path, "null argument")) return s;
    return guarded([&] {
        ktsne::write_embedding_csv(result->result.Y, labels_of(labels_from), path);
    });
}

ktsne_status ktsne_result_write_svg(const ktsne_result* result,
                                    const ktsne_dataset* labels_from,
                                    const char* path) {
    if (auto s = require(result && path, "null argument")) return s;
    return guarded([&] {
        ktsne::render_scatter_svg(result->result.Y, labels_of(labels_from), path);
    });
}

void ktsne_result_free(ktsne_result* result) { delete result; }

ktsne_status ktsne_trustworthiness(const ktsne_dataset* data,
                                   const ktsne_dataset* embedding, size_t k,
                                   double* out) {
    if (auto s = require(data && embedding && out, "null argument")) return s;
    return guarded([&] {
        *out = ktsne::trustworthiness(data->data.X, embedding->data.X, k);
    });
}

ktsne_status ktsne_trust_curve(const ktsne_dataset* data,
                               const ktsne_dataset* embedding,
                               const size_t* k_values, size_t k_count,
                               size_t repeats, size_t subsample, uint64_t seed,
                               ktsne_report** out) {
    if (auto s = require(data && embedding && k_values && out && k_count > 0,
                         "null argument"))
        return s;
    return guarded([&] {
        std::vector<std::size_t> ks(k_values, k_values + k_count);
        *out = new ktsne_report{
            ktsne::trustworthiness_curve(data->data.X, embedding->data.X, ks,
                                         repeats, subsample, seed),
            data->data.name};
    });
}

size_t ktsne_report_size(const ktsne_report* report) {
    return report ? report->report.k_values.size() : 0;
}

ktsne_status ktsne_report_scores(const ktsne_report* report, size_t* k_values,
                                 double* scores) {
    if (auto s = require(report && k_values && scores, "null argument")) return s;
    for (size_t t = 0; t < report->report.k_values.size(); ++t) {
        k_values[t] = report->report.k_values[t];
        scores[t] = report->report.scores[t];
    }
    return KTSNE_OK;
}

ktsne_status ktsne_report_write_json(const ktsne_report* report,
                                     const char* name, const char* path) {
    if (auto s = require(report && path, "null argument")) return s;
    return guarded([&] {
        ktsne::write_report_json(report->report,
                                 name != nullptr ? name : report->name, path);
    });
}

void ktsne_report_free(ktsne_report* report) { delete report; }

}  // extern "C"
