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

// Exercises the shared-library surface through ktsne.h alone.
#include <ktsne.h>

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ktsne_capi_tests";
    fs::create_directories(dir);
    return (dir / name).string();
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("config defaults") {
    ktsne_config cfg;
    ktsne_config_defaults(&cfg);
    CHECK(cfg.variant == KTSNE_VARIANT_PLAIN);
    CHECK(cfg.target_dim == 2);
    CHECK(cfg.perplexity == 30.0);
    CHECK(cfg.n_iter == 1000);
    CHECK(cfg.early_exaggeration == 12.0);
    CHECK(cfg.early_exaggeration_iters == 250);
    CHECK(cfg.learning_rate <= 0.0);
    CHECK(cfg.momentum == 0.5);
    CHECK(cfg.init == KTSNE_INIT_PCA);
    CHECK(cfg.alpha <= 0.0);
    CHECK(cfg.use_fd_gradient == 0);
    CHECK(std::strcmp(ktsne_version(), "") != 0);
}

TEST_CASE("blob generation and accessors") {
    ktsne_dataset* data = nullptr;
    REQUIRE(ktsne_dataset_blobs(50, 8, 5, 1.0, 3, &data) == KTSNE_OK);
    CHECK(ktsne_dataset_rows(data) == 50);
    CHECK(ktsne_dataset_cols(data) == 8);
    CHECK(ktsne_dataset_has_labels(data) == 1);
    std::vector<double> values(50 * 8);
    std::vector<int> labels(50);
    CHECK(ktsne_dataset_copy_values(data, values.data()) == KTSNE_OK);
    CHECK(ktsne_dataset_copy_labels(data, labels.data()) == KTSNE_OK);
    for (double v : values) CHECK(std::isfinite(v));
    for (int l : labels) {
        CHECK(l >= 0);
        CHECK(l < 5);
    }
    ktsne_dataset_free(data);
}

TEST_CASE("parameter errors set codes and messages") {
    ktsne_dataset* data = nullptr;
    CHECK(ktsne_dataset_blobs(10, 4, 20, 1.0, 0, &data) == KTSNE_ERR_PARAMETER);
    CHECK(std::strlen(ktsne_last_error()) > 0);
    CHECK(ktsne_dataset_from_csv(nullptr, nullptr, &data) == KTSNE_ERR_PARAMETER);
    CHECK(ktsne_dataset_from_csv("/nope/nothing.csv", nullptr, &data) ==
          KTSNE_ERR_IO);
}

TEST_CASE("buffer datasets reject non-finite values") {
    const double bad[4] = {1.0, 2.0, std::nan(""), 4.0};
    ktsne_dataset* data = nullptr;
    CHECK(ktsne_dataset_from_buffer(bad, 2, 2, nullptr, &data) == KTSNE_ERR_INPUT);
    const double good[4] = {1.0, 2.0, 3.0, 4.0};
    const int labels[2] = {0, 1};
    REQUIRE(ktsne_dataset_from_buffer(good, 2, 2, labels, &data) == KTSNE_OK);
    CHECK(ktsne_dataset_rows(data) == 2);
    CHECK(ktsne_dataset_has_labels(data) == 1);
    ktsne_dataset_free(data);
}

TEST_CASE("bad IDX magic maps to a format error") {
    const std::string path = temp_file("bogus.idx");
    std::ofstream(path, std::ios::binary) << "notidxdata";
    ktsne_dataset* data = nullptr;
    CHECK(ktsne_dataset_from_idx(path.c_str(), nullptr, &data) == KTSNE_ERR_FORMAT);
}

TEST_CASE("full reduce/trust round trip over the C surface") {
    ktsne_dataset* data = nullptr;
    REQUIRE(ktsne_dataset_blobs(80, 10, 4, 1.0, 7, &data) == KTSNE_OK);

    ktsne_config cfg;
    ktsne_config_defaults(&cfg);
    cfg.variant = KTSNE_VARIANT_E2E;
    cfg.kernel = KTSNE_KERNEL_RBF;
    cfg.gamma = 0.01;
    cfg.perplexity = 10.0;
    cfg.n_iter = 80;
    cfg.early_exaggeration_iters = 20;
    cfg.seed = 1;

    ktsne_result* result = nullptr;
    REQUIRE(ktsne_reduce(data, &cfg, &result) == KTSNE_OK);
    CHECK(ktsne_result_rows(result) == 80);
    CHECK(ktsne_result_dim(result) == 2);
    CHECK(ktsne_result_final_kl(result) >= 0.0);
    CHECK(ktsne_result_resolved_learning_rate(result) == 50.0);
    CHECK(ktsne_result_resolved_alpha(result) == 1.0);
    CHECK(ktsne_result_total_seconds(result) > 0.0);
    CHECK(ktsne_result_kernel_stage_seconds(result) > 0.0);

    const size_t trace_n = ktsne_result_trace_size(result);
    REQUIRE(trace_n > 2);
    std::vector<int> iters(trace_n);
    std::vector<double> kls(trace_n);
    CHECK(ktsne_result_trace(result, iters.data(), kls.data()) == KTSNE_OK);
    CHECK(iters.front() == 1);
    CHECK(iters.back() == 80);

    std::vector<double> emb(80 * 2);
    CHECK(ktsne_result_copy_embedding(result, emb.data()) == KTSNE_OK);
    for (double v : emb) CHECK(std::isfinite(v));

    ktsne_dataset* emb_set = nullptr;
    REQUIRE(ktsne_result_embedding_dataset(result, data, &emb_set) == KTSNE_OK);
    CHECK(ktsne_dataset_has_labels(emb_set) == 1);

    double score = -1.0;
    REQUIRE(ktsne_trustworthiness(data, emb_set, 10, &score) == KTSNE_OK);
    CHECK(score > 0.5);
    CHECK(score <= 1.0);

    const size_t ks[2] = {5, 10};
    ktsne_report* report = nullptr;
    REQUIRE(ktsne_trust_curve(data, emb_set, ks, 2, 3, 60, 5, &report) == KTSNE_OK);
    CHECK(ktsne_report_size(report) == 2);
    size_t out_k[2];
    double out_s[2];
    CHECK(ktsne_report_scores(report, out_k, out_s) == KTSNE_OK);
    CHECK(out_k[0] == 5);
    CHECK(out_s[0] >= 0.0);
    CHECK(out_s[0] <= 1.0);

    const std::string report_path = temp_file("report.json");
    CHECK(ktsne_report_write_json(report, "capi", report_path.c_str()) == KTSNE_OK);
    const std::string csv_path = temp_file("embedding.csv");
    CHECK(ktsne_result_write_csv(result, data, csv_path.c_str()) == KTSNE_OK);
    const std::string svg_path = temp_file("scatter.svg");
    CHECK(ktsne_result_write_svg(result, data, svg_path.c_str()) == KTSNE_OK);

    ktsne_report_free(report);
    ktsne_dataset_free(emb_set);
    ktsne_result_free(result);
    ktsne_dataset_free(data);
}

TEST_CASE("divergence surfaces as its own status") {
    ktsne_dataset* data = nullptr;
    REQUIRE(ktsne_dataset_blobs(500, 100, 10, 1.0, 0, &data) == KTSNE_OK);
    ktsne_config cfg;
    ktsne_config_defaults(&cfg);
    cfg.n_iter = 40;
    cfg.early_exaggeration_iters = 10;
    cfg.learning_rate = 1e9;
    ktsne_result* result = nullptr;
    CHECK(ktsne_reduce(data, &cfg, &result) == KTSNE_ERR_DIVERGENCE);
    CHECK(std::string(ktsne_last_error()).find("iteration") != std::string::npos);
    ktsne_dataset_free(data);
}

TEST_CASE("subsample and standardize through the C surface") {
    ktsne_dataset* data = nullptr;
    REQUIRE(ktsne_dataset_blobs(100, 6, 5, 1.0, 2, &data) == KTSNE_OK);
    ktsne_dataset* sub = nullptr;
    REQUIRE(ktsne_dataset_subsample(data, 40, 9, &sub) == KTSNE_OK);
    CHECK(ktsne_dataset_rows(sub) == 40);
    CHECK(ktsne_dataset_standardize(sub) == KTSNE_OK);
    std::vector<double> values(40 * 6);
    CHECK(ktsne_dataset_copy_values(sub, values.data()) == KTSNE_OK);
    for (size_t c = 0; c < 6; ++c) {
        double mean = 0.0;
        for (size_t i = 0; i < 40; ++i) mean += values[i * 6 + c];
        CHECK(std::abs(mean / 40.0) < 1e-10);
    }
    ktsne_dataset_free(sub);
    ktsne_dataset_free(data);
}

}  // TEST_SUITE
