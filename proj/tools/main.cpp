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

// Command-line front end. Everything below talks to the engine through the
// C API in ktsne.h; exit codes are 0 (success), 1 (input/parameter error),
// 2 (numerical divergence).
#include <ktsne.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDivergence = 2;

int exit_code_for(ktsne_status status) {
    if (status == KTSNE_OK) return kExitOk;
    return status == KTSNE_ERR_DIVERGENCE ? kExitDivergence : kExitError;
}

int report_failure(ktsne_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << ktsne_last_error() << "\n";
    return exit_code_for(status);
}

struct DatasetHandle {
    ktsne_dataset* ptr = nullptr;
    ~DatasetHandle() { ktsne_dataset_free(ptr); }
};

struct ResultHandle {
    ktsne_result* ptr = nullptr;
    ~ResultHandle() { ktsne_result_free(ptr); }
};

struct ReportHandle {
    ktsne_report* ptr = nullptr;
    ~ReportHandle() { ktsne_report_free(ptr); }
};

// Shared flags describing where the input data comes from.
struct DataOptions {
    std::string input;
    std::string dataset;  // "synthetic" selects the blob generator
    std::string label_column = "auto";
    bool standardize = false;
    std::uint64_t n = 2000;
    std::uint64_t d = 100;
    std::uint64_t clusters = 10;
    double spread = 1.0;
    std::uint64_t subsample = 0;
    std::uint64_t data_seed = 0;
    bool data_seed_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", input, "input CSV file");
        cmd->add_option("--dataset", dataset, "built-in dataset name (synthetic)");
        cmd->add_option("--label-column", label_column,
                        "label column name/index, 'auto' sniffs a header column "
                        "named label, 'none' disables");
        cmd->add_flag("--standardize", standardize,
                      "standardize features to zero mean, unit variance");
        cmd->add_option("--n", n, "synthetic: number of points");
        cmd->add_option("--d", d, "synthetic: feature dimension");
        cmd->add_option("--clusters", clusters, "synthetic: cluster count");
        cmd->add_option("--spread", spread, "synthetic: within-cluster stddev");
        cmd->add_option("--subsample", subsample, "row subsample size (0 = all)");
        cmd->add_option("--data-seed", data_seed,
                        "seed for synthetic generation/subsampling (defaults to --seed)")
            ->each([this](const std::string&) { data_seed_set = true; });
    }
};

// Optimizer flags shared by reduce and grid-search.
struct OptimizerOptions {
    std::string variant = "plain";
    std::string kernel;
    double gamma = 1.0;
    bool gamma_set = false;
    double perplexity = 30.0;
    int dim = 2;
    int iters = 1000;
    double ee_factor = 12.0;
    int ee_iters = -1;  // resolved to min(250, iters/4)
    double lr = 0.0;
    double momentum = 0.5;
    double late_momentum = -1.0;
    double alpha = 0.0;
    std::string init = "pca";
    bool fd_grad = false;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--variant", variant, "plain | kernel | e2e")
            ->check(CLI::IsMember({"plain", "kernel", "e2e"}));
        cmd->add_option("--kernel", kernel, "rbf | linear")
            ->check(CLI::IsMember({"rbf", "linear"}));
        cmd->add_option("--gamma", gamma, "RBF lengthscale")
            ->each([this](const std::string&) { gamma_set = true; });
        cmd->add_option("--perplexity", perplexity, "target perplexity");
        cmd->add_option("--dim", dim, "embedding dimension");
        cmd->add_option("--iters", iters, "gradient-descent iterations");
        cmd->add_option("--ee-factor", ee_factor, "early-exaggeration factor");
        cmd->add_option("--ee-iters", ee_iters,
                        "early-exaggeration iterations (default min(250, iters/4))");
        cmd->add_option("--lr", lr, "learning rate (0 = auto)");
        cmd->add_option("--momentum", momentum, "momentum weight");
        cmd->add_option("--late-momentum", late_momentum,
                        "momentum after exaggeration (negative = keep --momentum)");
        cmd->add_option("--alpha", alpha, "Student-t degrees of freedom (0 = auto)");
        cmd->add_option("--init", init, "pca | kpca")
            ->check(CLI::IsMember({"pca", "kpca"}));
        cmd->add_flag("--fd-grad", fd_grad,
                      "finite-difference kernel gradients in the lifted space");
        cmd->add_option("--seed", seed, "random seed");
    }

    int resolved_ee_iters() const {
        if (ee_iters >= 0) return ee_iters;
        return std::min(250, iters / 4);
    }

    // Fills a config and prints flag-combination notices.
    ktsne_config to_config() const {
        ktsne_config cfg;
        ktsne_config_defaults(&cfg);
        if (variant == "plain") {
            cfg.variant = KTSNE_VARIANT_PLAIN;
        } else if (variant == "kernel") {
            cfg.variant = KTSNE_VARIANT_KERNEL;
        } else {
            cfg.variant = KTSNE_VARIANT_E2E;
        }
        std::string kernel_name = kernel;
        if (kernel_name.empty()) {
            kernel_name = "rbf";
            if (variant == "e2e" || variant == "kernel") {
                std::cerr << "notice: --variant " << variant
                          << " without --kernel, defaulting to rbf\n";
            }
        }
        cfg.kernel = kernel_name == "linear" ? KTSNE_KERNEL_LINEAR : KTSNE_KERNEL_RBF;
        if (gamma_set && cfg.kernel == KTSNE_KERNEL_LINEAR) {
            std::cerr << "warning: --gamma has no effect with the linear kernel\n";
        }
        cfg.gamma = gamma;
        cfg.target_dim = dim;
        cfg.perplexity = perplexity;
        cfg.n_iter = iters;
        cfg.early_exaggeration = ee_factor;
        cfg.early_exaggeration_iters = resolved_ee_iters();
        cfg.learning_rate = lr;
        cfg.momentum = momentum;
        cfg.late_momentum = late_momentum;
        cfg.alpha = alpha;
        cfg.init = init == "kpca" ? KTSNE_INIT_KPCA : KTSNE_INIT_PCA;
        cfg.use_fd_gradient = fd_grad ? 1 : 0;
        cfg.seed = seed;
        return cfg;
    }
};

// First CSV line, split on commas with surrounding whitespace dropped.
std::vector<std::string> sniff_header(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    if (!in || !std::getline(in, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string cur;
    while (std::getline(ss, cur, ',')) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        fields.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return fields;
}

const char* resolve_label_column(const std::string& requested,
                                 const std::string& path, std::string& storage) {
    if (requested == "none") return nullptr;
    if (requested != "auto") {
        storage = requested;
        return storage.c_str();
    }
    const auto header = sniff_header(path);
    if (std::find(header.begin(), header.end(), "label") != header.end()) {
        storage = "label";
        return storage.c_str();
    }
    return nullptr;
}

// Loads or generates the requested dataset, then applies subsampling and
// standardization. Returns a process exit code, reporting its own errors.
int open_dataset(const DataOptions& opts, std::uint64_t default_seed,
                 DatasetHandle& out, std::string& descriptor) {
    const std::uint64_t seed = opts.data_seed_set ? opts.data_seed : default_seed;
    ktsne_status status = KTSNE_OK;
    if (!opts.input.empty()) {
        std::string storage;
        const char* label = resolve_label_column(opts.label_column, opts.input, storage);
        status = ktsne_dataset_from_csv(opts.input.c_str(), label, &out.ptr);
        descriptor = opts.input;
    } else if (opts.dataset == "synthetic") {
        status = ktsne_dataset_blobs(opts.n, opts.d, opts.clusters, opts.spread,
                                     seed, &out.ptr);
        descriptor = "synthetic";
    } else {
        std::cerr << "error: provide --input FILE or --dataset synthetic\n";
        return kExitError;
    }
    if (status != KTSNE_OK) return report_failure(status, "loading data");

    if (opts.subsample > 0 && opts.subsample < ktsne_dataset_rows(out.ptr)) {
        DatasetHandle sub;
        status = ktsne_dataset_subsample(out.ptr, opts.subsample, seed, &sub.ptr);
        if (status != KTSNE_OK) return report_failure(status, "subsampling");
        std::swap(out.ptr, sub.ptr);
    }
    if (opts.standardize) {
        status = ktsne_dataset_standardize(out.ptr);
        if (status != KTSNE_OK) return report_failure(status, "standardizing");
    }
    return kExitOk;
}

json timing_json(const ktsne_result* res, int iters) {
    json t;
    t["affinity_seconds"] = ktsne_result_affinity_seconds(res);
    t["loop_seconds"] = ktsne_result_loop_seconds(res);
    t["kernel_stage_seconds"] = ktsne_result_kernel_stage_seconds(res);
    t["total_seconds"] = ktsne_result_total_seconds(res);
    t["per_iteration_loop_seconds"] = ktsne_result_loop_seconds(res) / iters;
    t["per_iteration_kernel_seconds"] =
        ktsne_result_kernel_stage_seconds(res) / iters;
    return t;
}

// Fully resolved configuration echo; auto values appear as concrete numbers.
json config_json(const ktsne_config& cfg, const ktsne_result* res) {
    json c;
    c["variant"] = cfg.variant == KTSNE_VARIANT_PLAIN    ? "plain"
                   : cfg.variant == KTSNE_VARIANT_KERNEL ? "kernel"
                                                         : "e2e";
    c["target_dim"] = cfg.target_dim;
    c["perplexity"] = cfg.perplexity;
    c["kernel"] = cfg.kernel == KTSNE_KERNEL_RBF ? "rbf" : "linear";
    if (cfg.kernel == KTSNE_KERNEL_RBF) c["gamma"] = cfg.gamma;
    c["n_iter"] = cfg.n_iter;
    c["early_exaggeration"] = cfg.early_exaggeration;
    c["early_exaggeration_iters"] = cfg.early_exaggeration_iters;
    c["learning_rate"] = ktsne_result_resolved_learning_rate(res);
    c["learning_rate_auto"] = cfg.learning_rate <= 0.0;
    c["momentum"] = cfg.momentum;
    if (cfg.late_momentum >= 0.0) c["late_momentum"] = cfg.late_momentum;
    c["init"] = cfg.init == KTSNE_INIT_PCA ? "pca" : "kpca";
    c["alpha"] = ktsne_result_resolved_alpha(res);
    c["alpha_auto"] = cfg.alpha <= 0.0;
    c["seed"] = cfg.seed;
    c["fd_gradient"] = cfg.use_fd_gradient != 0;
    return c;
}

int cmd_reduce(const DataOptions& data_opts, const OptimizerOptions& opt_opts,
               const std::string& out_dir) {
    DatasetHandle data;
    std::string descriptor;
    if (int rc = open_dataset(data_opts, opt_opts.seed, data, descriptor)) return rc;

    const ktsne_config cfg = opt_opts.to_config();
    ResultHandle result;
    if (auto s = ktsne_reduce(data.ptr, &cfg, &result.ptr)) {
        return report_failure(s, "reduction");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string emb_path = (fs::path(out_dir) / "embedding.csv").string();
    const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
    const std::string svg_path = (fs::path(out_dir) / "scatter.svg").string();

    if (auto s = ktsne_result_write_csv(result.ptr, data.ptr, emb_path.c_str())) {
        return report_failure(s, "writing embedding");
    }
    const bool with_svg = opt_opts.dim == 2;
    if (with_svg) {
        if (auto s = ktsne_result_write_svg(result.ptr, data.ptr, svg_path.c_str())) {
            return report_failure(s, "writing scatter plot");
        }
    }

    json manifest;
    manifest["dataset"] = {{"source", descriptor},
                           {"rows", ktsne_dataset_rows(data.ptr)},
                           {"cols", ktsne_dataset_cols(data.ptr)},
                           {"subsample", data_opts.subsample},
                           {"standardized", data_opts.standardize}};
    manifest["config"] = config_json(cfg, result.ptr);
    manifest["outputs"]["embedding_csv"] = emb_path;
    if (with_svg) manifest["outputs"]["scatter_svg"] = svg_path;
    manifest["timing"] = timing_json(result.ptr, cfg.n_iter);
    manifest["final_kl"] = ktsne_result_final_kl(result.ptr);
    const size_t trace_n = ktsne_result_trace_size(result.ptr);
    std::vector<int> trace_iters(trace_n);
    std::vector<double> trace_kl(trace_n);
    ktsne_result_trace(result.ptr, trace_iters.data(), trace_kl.data());
    json trace = json::array();
    for (size_t t = 0; t < trace_n; ++t) {
        trace.push_back({{"iter", trace_iters[t]}, {"kl", trace_kl[t]}});
    }
    manifest["kl_trace"] = trace;

    std::ofstream mf(manifest_path);
    mf << manifest.dump(2) << "\n";
    if (!mf) {
        std::cerr << "error: cannot write " << manifest_path << "\n";
        return kExitError;
    }

    std::cout << "final KL: " << ktsne_result_final_kl(result.ptr) << "\n"
              << "wall time: " << ktsne_result_total_seconds(result.ptr) << " s\n"
              << "outputs: " << emb_path << ", " << manifest_path;
    if (with_svg) std::cout << ", " << svg_path;
    std::cout << "\n";
    return kExitOk;
}

int cmd_trust(const std::string& data_path, const std::string& embedding_path,
              const std::string& label_column, std::vector<std::uint64_t> k_list,
              std::uint64_t repeats, std::uint64_t subsample, std::uint64_t seed,
              const std::string& out_path) {
    DatasetHandle data;
    std::string storage;
    const char* label = resolve_label_column(label_column, data_path, storage);
    if (auto s = ktsne_dataset_from_csv(data_path.c_str(), label, &data.ptr)) {
        return report_failure(s, "loading data");
    }
    DatasetHandle embedding;
    std::string emb_storage;
    const char* emb_label = resolve_label_column("auto", embedding_path, emb_storage);
    if (auto s = ktsne_dataset_from_csv(embedding_path.c_str(), emb_label,
                                        &embedding.ptr)) {
        return report_failure(s, "loading embedding");
    }

    std::sort(k_list.begin(), k_list.end());
    std::vector<size_t> ks(k_list.begin(), k_list.end());
    ReportHandle report;
    if (auto s = ktsne_trust_curve(data.ptr, embedding.ptr, ks.data(), ks.size(),
                                   repeats, subsample, seed, &report.ptr)) {
        return report_failure(s, "trustworthiness");
    }

    std::vector<size_t> out_k(ks.size());
    std::vector<double> out_s(ks.size());
    ktsne_report_scores(report.ptr, out_k.data(), out_s.data());
    std::cout << "k\ttrustworthiness\n";
    for (size_t t = 0; t < out_k.size(); ++t) {
        std::cout << out_k[t] << "\t" << out_s[t] << "\n";
    }
    if (auto s = ktsne_report_write_json(report.ptr, nullptr, out_path.c_str())) {
        return report_failure(s, "writing report");
    }
    std::cout << "report: " << out_path << " (repeats=" << repeats << ")\n";
    return kExitOk;
}

struct GridCell {
    double gamma = 0.0;
    double perplexity = 0.0;
    double trust = -1.0;
    double final_kl = -1.0;
    double seconds = 0.0;
    bool ok = false;
    std::string error;
};

int cmd_grid_search(const DataOptions& data_opts, OptimizerOptions opt_opts,
                    std::vector<double> gammas, std::vector<double> perplexities,
                    std::uint64_t metric_k, unsigned jobs,
                    const std::string& out_dir) {
    DatasetHandle data;
    std::string descriptor;
    if (int rc = open_dataset(data_opts, opt_opts.seed, data, descriptor)) return rc;
    if (opt_opts.kernel.empty()) {
        if (opt_opts.variant != "plain") {
            std::cerr << "notice: --variant " << opt_opts.variant
                      << " without --kernel, defaulting to rbf\n";
        }
        opt_opts.kernel = "rbf";
    }
    const size_t n = ktsne_dataset_rows(data.ptr);
    if (metric_k < 1 || 2 * metric_k >= n) {
        std::cerr << "error: --metric-k " << metric_k
                  << " must satisfy 1 <= k < n/2 for n = " << n << "\n";
        return kExitError;
    }
    if (gammas.empty() || perplexities.empty()) {
        std::cerr << "error: empty grid\n";
        return kExitError;
    }

    std::sort(gammas.begin(), gammas.end());
    std::sort(perplexities.begin(), perplexities.end());
    if (opt_opts.variant == "plain" || opt_opts.kernel == "linear") {
        gammas = {gammas.front()};  // gamma has no effect, one column suffices
    }

    std::vector<GridCell> cells;
    for (double g : gammas) {
        for (double p : perplexities) {
            GridCell cell;
            cell.gamma = g;
            cell.perplexity = p;
            cells.push_back(cell);
        }
    }

    std::atomic<size_t> next{0};
    std::vector<ktsne_result*> kept(cells.size(), nullptr);
    auto worker = [&]() {
        for (size_t idx = next.fetch_add(1); idx < cells.size();
             idx = next.fetch_add(1)) {
            GridCell& cell = cells[idx];
            OptimizerOptions local = opt_opts;
            local.gamma = cell.gamma;
            local.gamma_set = false;  // grid-injected, no warning
            local.perplexity = cell.perplexity;
            const ktsne_config cfg = local.to_config();
            const auto started = std::chrono::steady_clock::now();
            ktsne_result* res = nullptr;
            ktsne_status s = ktsne_reduce(data.ptr, &cfg, &res);
            if (s == KTSNE_OK) {
                ktsne_dataset* emb = nullptr;
                double score = -1.0;
                s = ktsne_result_embedding_dataset(res, nullptr, &emb);
                if (s == KTSNE_OK) {
                    s = ktsne_trustworthiness(data.ptr, emb, metric_k, &score);
                }
                ktsne_dataset_free(emb);
                if (s == KTSNE_OK) {
                    cell.trust = score;
                    cell.final_kl = ktsne_result_final_kl(res);
                    cell.ok = true;
                    kept[idx] = res;
                } else {
                    ktsne_result_free(res);
                }
            }
            if (s != KTSNE_OK) cell.error = ktsne_last_error();
            cell.seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // canonical order: best score first, ties to smaller gamma then perplexity
    std::vector<size_t> order(cells.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const GridCell& ca = cells[a];
        const GridCell& cb = cells[b];
        if (ca.ok != cb.ok) return ca.ok;
        if (ca.trust != cb.trust) return ca.trust > cb.trust;
        if (ca.gamma != cb.gamma) return ca.gamma < cb.gamma;
        return ca.perplexity < cb.perplexity;
    });

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string csv_path = (fs::path(out_dir) / "grid_results.csv").string();
    const std::string json_path = (fs::path(out_dir) / "grid_results.json").string();
    std::ofstream csv(csv_path);
    csv << "rank,gamma,perplexity,trustworthiness,final_kl,seconds,status\n";
    csv << std::setprecision(17);
    json jcells = json::array();
    for (size_t rank = 0; rank < order.size(); ++rank) {
        const GridCell& cell = cells[order[rank]];
        csv << (rank + 1) << "," << cell.gamma << "," << cell.perplexity << ",";
        if (cell.ok) {
            csv << cell.trust << "," << cell.final_kl;
        } else {
            csv << ",";
        }
        csv << "," << cell.seconds << "," << (cell.ok ? "ok" : "failed") << "\n";
        json jc = {{"rank", rank + 1},
                   {"gamma", cell.gamma},
                   {"perplexity", cell.perplexity},
                   {"seconds", cell.seconds},
                   {"status", cell.ok ? "ok" : "failed"}};
        if (cell.ok) {
            jc["trustworthiness"] = cell.trust;
            jc["final_kl"] = cell.final_kl;
        } else {
            jc["error"] = cell.error;
        }
        jcells.push_back(jc);
    }
    if (!csv) {
        std::cerr << "error: cannot write " << csv_path << "\n";
        return kExitError;
    }
    csv.close();

    json summary;
    summary["dataset"] = descriptor;
    summary["metric_k"] = metric_k;
    summary["variant"] = opt_opts.variant;
    summary["cells"] = jcells;

    const size_t best = order.front();
    if (cells[best].ok) {
        summary["best"] = {{"gamma", cells[best].gamma},
                           {"perplexity", cells[best].perplexity},
                           {"trustworthiness", cells[best].trust}};
        const std::string best_csv =
            (fs::path(out_dir) / "best_embedding.csv").string();
        if (auto s =
                ktsne_result_write_csv(kept[best], data.ptr, best_csv.c_str())) {
            return report_failure(s, "writing best embedding");
        }
        summary["best"]["embedding_csv"] = best_csv;
        if (opt_opts.dim == 2) {
            const std::string best_svg =
                (fs::path(out_dir) / "best_scatter.svg").string();
            if (auto s =
                    ktsne_result_write_svg(kept[best], data.ptr, best_svg.c_str())) {
                return report_failure(s, "writing best scatter");
            }
            summary["best"]["scatter_svg"] = best_svg;
        }
    } else {
        std::cerr << "note: every grid cell failed; no best embedding written\n";
    }
    for (ktsne_result* res : kept) ktsne_result_free(res);

    std::ofstream jf(json_path);
    jf << summary.dump(2) << "\n";
    if (!jf) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return kExitError;
    }

    std::cout << "grid cells: " << cells.size() << " (" << csv_path << ")\n";
    if (cells[best].ok) {
        std::cout << "best: gamma=" << cells[best].gamma
                  << " perplexity=" << cells[best].perplexity
                  << " trustworthiness=" << cells[best].trust << "\n";
    }
    return kExitOk;
}

int cmd_gen_data(std::uint64_t n, std::uint64_t d, std::uint64_t clusters,
                 double spread, std::uint64_t seed, const std::string& out_path) {
    DatasetHandle data;
    if (auto s = ktsne_dataset_blobs(n, d, clusters, spread, seed, &data.ptr)) {
        return report_failure(s, "generating data");
    }
    if (auto s = ktsne_dataset_write_csv(data.ptr, out_path.c_str())) {
        return report_failure(s, "writing data");
    }
    std::cout << "wrote " << ktsne_dataset_rows(data.ptr) << " x "
              << ktsne_dataset_cols(data.ptr) << " (+label) to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ktsne: t-SNE and kernelized t-SNE dimensionality reduction"};
    app.require_subcommand(1);
    int rc = kExitOk;

    auto* reduce = app.add_subcommand("reduce", "run a dimensionality reduction");
    auto reduce_data = std::make_shared<DataOptions>();
    auto reduce_opts = std::make_shared<OptimizerOptions>();
    auto reduce_out = std::make_shared<std::string>(".");
    reduce_data->attach(reduce);
    reduce_opts->attach(reduce);
    reduce->add_option("--out-dir", *reduce_out, "output directory");
    reduce->callback(
        [=, &rc]() { rc = cmd_reduce(*reduce_data, *reduce_opts, *reduce_out); });

    auto* trust = app.add_subcommand("trust", "score an embedding against its data");
    auto trust_data = std::make_shared<std::string>();
    auto trust_emb = std::make_shared<std::string>();
    auto trust_label = std::make_shared<std::string>("auto");
    auto trust_k = std::make_shared<std::vector<std::uint64_t>>(
        std::vector<std::uint64_t>{10, 50, 100});
    auto trust_repeats = std::make_shared<std::uint64_t>(3);
    auto trust_subsample = std::make_shared<std::uint64_t>(0);
    auto trust_seed = std::make_shared<std::uint64_t>(0);
    auto trust_out = std::make_shared<std::string>("trust_report.json");
    trust->add_option("--data", *trust_data, "data CSV")->required();
    trust->add_option("--embedding", *trust_emb, "embedding CSV")->required();
    trust->add_option("--label-column", *trust_label, "label column of --data");
    trust->add_option("--k-list", *trust_k, "neighborhood sizes")->delimiter(',');
    trust->add_option("--repeats", *trust_repeats, "subsampling repetitions");
    trust->add_option("--subsample", *trust_subsample, "rows per repeat (0 = all)");
    trust->add_option("--seed", *trust_seed, "subsampling seed");
    trust->add_option("--out", *trust_out, "report path");
    trust->callback([=, &rc]() {
        rc = cmd_trust(*trust_data, *trust_emb, *trust_label, *trust_k,
                       *trust_repeats, *trust_subsample, *trust_seed, *trust_out);
    });

    auto* grid = app.add_subcommand(
        "grid-search", "sweep gamma x perplexity, rank by trustworthiness");
    auto grid_data = std::make_shared<DataOptions>();
    auto grid_opts = std::make_shared<OptimizerOptions>();
    grid_opts->variant = "e2e";
    auto grid_gammas = std::make_shared<std::vector<double>>(
        std::vector<double>{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3});
    auto grid_perp = std::make_shared<std::vector<double>>(
        std::vector<double>{10, 20, 30, 40, 50});
    auto grid_k = std::make_shared<std::uint64_t>(100);
    auto grid_jobs = std::make_shared<unsigned>(1);
    auto grid_out = std::make_shared<std::string>(".");
    grid_data->attach(grid);
    grid_opts->attach(grid);
    grid->add_option("--gammas", *grid_gammas, "gamma grid")->delimiter(',');
    grid->add_option("--perplexities", *grid_perp, "perplexity grid")->delimiter(',');
    grid->add_option("--metric-k", *grid_k, "trustworthiness neighborhood size");
    grid->add_option("--jobs", *grid_jobs, "parallel grid cells");
    grid->add_option("--out-dir", *grid_out, "output directory");
    grid->callback([=, &rc]() {
        rc = cmd_grid_search(*grid_data, *grid_opts, *grid_gammas, *grid_perp,
                             *grid_k, *grid_jobs, *grid_out);
    });

    auto* gen = app.add_subcommand("gen-data", "write the synthetic blob dataset");
    auto gen_n = std::make_shared<std::uint64_t>(2000);
    auto gen_d = std::make_shared<std::uint64_t>(100);
    auto gen_clusters = std::make_shared<std::uint64_t>(10);
    auto gen_spread = std::make_shared<double>(1.0);
    auto gen_seed = std::make_shared<std::uint64_t>(0);
    auto gen_out = std::make_shared<std::string>();
    gen->add_option("--n", *gen_n, "number of points");
    gen->add_option("--d", *gen_d, "feature dimension");
    gen->add_option("--clusters", *gen_clusters, "cluster count");
    gen->add_option("--spread", *gen_spread, "within-cluster stddev");
    gen->add_option("--seed", *gen_seed, "random seed");
    gen->add_option("--out", *gen_out, "output CSV path")->required();
    gen->callback([=, &rc]() {
        rc = cmd_gen_data(*gen_n, *gen_d, *gen_clusters, *gen_spread, *gen_seed,
                          *gen_out);
    });

    CLI11_PARSE(app, argc, argv);
    return rc;
}
