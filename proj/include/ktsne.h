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

/* C interface to the ktsne dimensionality-reduction engine.
 *
 * All functions return KTSNE_OK or an error code; on failure
 * ktsne_last_error() describes the problem for the calling thread.
 * Objects behind opaque handles must be released with their *_free call.
 */
#ifndef KTSNE_H
#define KTSNE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ktsne_dataset ktsne_dataset;
typedef struct ktsne_result ktsne_result;
typedef struct ktsne_report ktsne_report;

typedef enum ktsne_status {
    KTSNE_OK = 0,
    KTSNE_ERR_PARAMETER = 1,
    KTSNE_ERR_DIMENSION = 2,
    KTSNE_ERR_INPUT = 3,
    KTSNE_ERR_FORMAT = 4,
    KTSNE_ERR_IO = 5,
    KTSNE_ERR_DIVERGENCE = 6,
    KTSNE_ERR_UNSUPPORTED = 7,
    KTSNE_ERR_INTERNAL = 8
} ktsne_status;

typedef enum ktsne_variant {
    KTSNE_VARIANT_PLAIN = 0,
    KTSNE_VARIANT_KERNEL = 1, /* kernel metric in the data space only */
    KTSNE_VARIANT_E2E = 2     /* kernel metric in both spaces */
} ktsne_variant;

typedef enum ktsne_kernel_kind {
    KTSNE_KERNEL_RBF = 0,
    KTSNE_KERNEL_LINEAR = 1
} ktsne_kernel_kind;

typedef enum ktsne_init_method {
    KTSNE_INIT_PCA = 0,
    KTSNE_INIT_KPCA = 1
} ktsne_init_method;

typedef struct ktsne_config {
    ktsne_variant variant;
    int target_dim;
    double perplexity;
    ktsne_kernel_kind kernel;
    double gamma;
    int n_iter;
    double early_exaggeration;
    int early_exaggeration_iters;
    double learning_rate; /* <= 0 selects max(n / exaggeration / 4, 50) */
    double momentum;
    double late_momentum; /* < 0 disables the post-exaggeration switch */
    ktsne_init_method init;
    double alpha; /* <= 0 selects max(target_dim - 1, 1) */
    uint64_t seed;
    int use_fd_gradient; /* finite-difference kernel pair gradients */
} ktsne_config;

/* Fill a config with the standard defaults (plain variant, dim 2,
 * perplexity 30, RBF gamma 1, 1000 iterations with 250 of exaggeration at
 * factor 12, auto learning rate, momentum 0.5, PCA init, auto alpha). */
void ktsne_config_defaults(ktsne_config* config);

const char* ktsne_last_error(void);
const char* ktsne_version(void);

/* -- datasets ----------------------------------------------------------- */

ktsne_status ktsne_dataset_from_csv(const char* path, const char* label_column,
                                    ktsne_dataset** out);
ktsne_status ktsne_dataset_from_idx(const char* images_path,
                                    const char* labels_path, ktsne_dataset** out);
/* values is row-major n x d; labels may be NULL */
ktsne_status ktsne_dataset_from_buffer(const double* values, size_t n, size_t d,
                                       const int* labels, ktsne_dataset** out);
ktsne_status ktsne_dataset_blobs(size_t n, size_t d, size_t clusters,
                                 double spread, uint64_t seed,
                                 ktsne_dataset** out);
ktsne_status ktsne_dataset_subsample(const ktsne_dataset* data, size_t count,
                                     uint64_t seed, ktsne_dataset** out);
ktsne_status ktsne_dataset_standardize(ktsne_dataset* data);
size_t ktsne_dataset_rows(const ktsne_dataset* data);
size_t ktsne_dataset_cols(const ktsne_dataset* data);
int ktsne_dataset_has_labels(const ktsne_dataset* data);
/* out must hold rows*cols doubles (row-major) */
ktsne_status ktsne_dataset_copy_values(const ktsne_dataset* data, double* out);
/* out must hold rows ints */
ktsne_status ktsne_dataset_copy_labels(const ktsne_dataset* data, int* out);
ktsne_status ktsne_dataset_write_csv(const ktsne_dataset* data, const char* path);
void ktsne_dataset_free(ktsne_dataset* data);

/* -- reduction ---------------------------------------------------------- */

ktsne_status ktsne_reduce(const ktsne_dataset* data, const ktsne_config* config,
                          ktsne_result** out);
size_t ktsne_result_rows(const ktsne_result* result);
size_t ktsne_result_dim(const ktsne_result* result);
/* out must hold rows*dim doubles (row-major) */
ktsne_status ktsne_result_copy_embedding(const ktsne_result* result, double* out);
/* embedding as a dataset handle (labels taken from `labels_from` if given) */
ktsne_status ktsne_result_embedding_dataset(const ktsne_result* result,
                                            const ktsne_dataset* labels_from,
                                            ktsne_dataset** out);
size_t ktsne_result_trace_size(const ktsne_result* result);
ktsne_status ktsne_result_trace(const ktsne_result* result, int* iters,
                                double* kl);
double ktsne_result_final_kl(const ktsne_result* result);
double ktsne_result_resolved_learning_rate(const ktsne_result* result);
double ktsne_result_resolved_alpha(const ktsne_result* result);
double ktsne_result_affinity_seconds(const ktsne_result* result);
double ktsne_result_loop_seconds(const ktsne_result* result);
double ktsne_result_kernel_stage_seconds(const ktsne_result* result);
double ktsne_result_total_seconds(const ktsne_result* result);
ktsne_status ktsne_result_write_csv(const ktsne_result* result,
                                    const ktsne_dataset* labels_from,
                                    const char* path);
ktsne_status ktsne_result_write_svg(const ktsne_result* result,
                                    const ktsne_dataset* labels_from,
                                    const char* path);
void ktsne_result_free(ktsne_result* result);

/* -- trustworthiness ---------------------------------------------------- */

ktsne_status ktsne_trustworthiness(const ktsne_dataset* data,
                                   const ktsne_dataset* embedding, size_t k,
                                   double* out);
/* subsample 0 means all rows */
ktsne_status ktsne_trust_curve(const ktsne_dataset* data,
                               const ktsne_dataset* embedding,
                               const size_t* k_values, size_t k_count,
                               size_t repeats, size_t subsample, uint64_t seed,
                               ktsne_report** out);
size_t ktsne_report_size(const ktsne_report* report);
ktsne_status ktsne_report_scores(const ktsne_report* report, size_t* k_values,
                                 double* scores);
ktsne_status ktsne_report_write_json(const ktsne_report* report,
                                     const char* name, const char* path);
void ktsne_report_free(ktsne_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KTSNE_H */
