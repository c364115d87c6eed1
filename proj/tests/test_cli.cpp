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

// End-to-end runs of the installed command-line binary (path injected by the
// build as KTSNE_CLI_PATH).
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(KTSNE_CLI_PATH) + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) {
        res.output += buf.data();
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "ktsne_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-data writes the expected table deterministically") {
    const auto dir = work_dir();
    const auto out_a = dir / "gen_a.csv";
    const auto out_b = dir / "gen_b.csv";
    auto res = run_cli("gen-data --n 60 --d 5 --clusters 6 --seed 4 --out " +
                       quoted(out_a));
    CHECK(res.exit_code == 0);
    res = run_cli("gen-data --n 60 --d 5 --clusters 6 --seed 4 --out " +
                  quoted(out_b));
    CHECK(res.exit_code == 0);
    CHECK(slurp(out_a) == slurp(out_b));

    std::ifstream in(out_a);
    std::string header;
    std::getline(in, header);
    CHECK(header == "f1,f2,f3,f4,f5,label");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 60);
}

TEST_CASE("gen-data default shape is 2000 x (100 + label)") {
    const auto dir = work_dir();
    const auto out = dir / "gen_default.csv";
    const auto res = run_cli("gen-data --out " + quoted(out));
    CHECK(res.exit_code == 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(std::count(header.begin(), header.end(), ',') == 100);  // 101 columns
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 2000);
}

TEST_CASE("reduce produces embedding, manifest, and scatter") {
    const auto dir = work_dir();
    const auto out = dir / "reduce_e2e";
    const auto res = run_cli(
        "reduce --dataset synthetic --n 150 --d 12 --clusters 5 "
        "--variant e2e --kernel rbf --gamma 0.01 --perplexity 15 --iters 100 "
        "--seed 7 --out-dir " + quoted(out));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("final KL") != std::string::npos);
    CHECK(fs::exists(out / "embedding.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "scatter.svg"));

    json manifest;
    std::ifstream(out / "manifest.json") >> manifest;
    CHECK(manifest["config"]["learning_rate"] == 50.0);  // max(150/12/4, 50)
    CHECK(manifest["config"]["alpha"] == 1.0);
    CHECK(manifest["config"]["variant"] == "e2e");
    CHECK(manifest["timing"]["kernel_stage_seconds"].get<double>() > 0.0);
    CHECK(manifest["timing"]["total_seconds"].get<double>() > 0.0);
    CHECK(manifest["final_kl"].get<double>() >= 0.0);
    CHECK(manifest["kl_trace"].size() > 2);
}

TEST_CASE("plain and linear-kernel embeddings are byte-identical") {
    const auto dir = work_dir();
    const auto data = dir / "eq_data.csv";
    REQUIRE(run_cli("gen-data --n 80 --d 8 --clusters 4 --seed 2 --out " +
                    quoted(data)).exit_code == 0);
    const auto out_a = dir / "eq_plain";
    const auto out_b = dir / "eq_kernel";
    const std::string shared =
        " --perplexity 12 --iters 90 --seed 5 --input " + quoted(data);
    REQUIRE(run_cli("reduce --variant plain" + shared + " --out-dir " +
                    quoted(out_a)).exit_code == 0);
    REQUIRE(run_cli("reduce --variant kernel --kernel linear" + shared +
                    " --out-dir " + quoted(out_b)).exit_code == 0);
    CHECK(slurp(out_a / "embedding.csv") == slurp(out_b / "embedding.csv"));
}

TEST_CASE("missing input file fails naming the path") {
    const auto res = run_cli("reduce --input /definitely/not/here.csv --out-dir /tmp");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("/definitely/not/here.csv") != std::string::npos);
}

TEST_CASE("gamma with a linear kernel warns") {
    const auto dir = work_dir();
    const auto res = run_cli(
        "reduce --dataset synthetic --n 50 --d 6 --clusters 5 --variant kernel "
        "--kernel linear --gamma 0.5 --perplexity 8 --iters 40 --out-dir " +
        quoted(dir / "warn_run"));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("--gamma has no effect") != std::string::npos);
}

TEST_CASE("divergence exits with code 2") {
    const auto res = run_cli(
        "reduce --dataset synthetic --n 500 --lr 1e9 --iters 40 --ee-iters 10 "
        "--out-dir " + quoted(work_dir() / "diverge_run"));
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("diverged") != std::string::npos);
}

TEST_CASE("trust of the data against itself is a flat 1") {
    const auto dir = work_dir();
    const auto data = dir / "self.csv";
    REQUIRE(run_cli("gen-data --n 50 --d 4 --clusters 5 --seed 8 --out " +
                    quoted(data)).exit_code == 0);
    const auto report_path = dir / "self_report.json";
    const auto res = run_cli("trust --data " + quoted(data) + " --embedding " +
                             quoted(data) + " --k-list 3,7 --repeats 3 --out " +
                             quoted(report_path));
    CHECK(res.exit_code == 0);
    json report;
    std::ifstream(report_path) >> report;
    CHECK(report["repeats"] == 3);
    for (const auto& s : report["scores"]) CHECK(s.get<double>() == 1.0);
}

TEST_CASE("trust rejects oversized k naming the offender") {
    const auto dir = work_dir();
    const auto data = dir / "smallk.csv";
    REQUIRE(run_cli("gen-data --n 30 --d 4 --clusters 3 --seed 1 --out " +
                    quoted(data)).exit_code == 0);
    const auto res = run_cli("trust --data " + quoted(data) + " --embedding " +
                             quoted(data) + " --k-list 20 --out " +
                             quoted(dir / "k_report.json"));
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("20") != std::string::npos);
}

TEST_CASE("trust rejects row-count mismatches") {
    const auto dir = work_dir();
    const auto a = dir / "rows_a.csv";
    const auto b = dir / "rows_b.csv";
    REQUIRE(run_cli("gen-data --n 40 --d 4 --clusters 4 --seed 1 --out " +
                    quoted(a)).exit_code == 0);
    REQUIRE(run_cli("gen-data --n 30 --d 4 --clusters 3 --seed 1 --out " +
                    quoted(b)).exit_code == 0);
    const auto res = run_cli("trust --data " + quoted(a) + " --embedding " +
                             quoted(b) + " --k-list 5 --out " +
                             quoted(dir / "mm_report.json"));
    CHECK(res.exit_code == 1);
}

TEST_CASE("one-cell grid matches reduce plus trust") {
    const auto dir = work_dir();
    const auto data = dir / "grid1.csv";
    REQUIRE(run_cli("gen-data --n 90 --d 8 --clusters 3 --seed 6 --out " +
                    quoted(data)).exit_code == 0);

    const auto grid_out = dir / "grid1_out";
    auto res = run_cli("grid-search --input " + quoted(data) +
                       " --variant e2e --kernel rbf --gammas 0.01 "
                       "--perplexities 12 --metric-k 9 --iters 70 --seed 3 "
                       "--out-dir " + quoted(grid_out));
    REQUIRE(res.exit_code == 0);
    json grid;
    std::ifstream(grid_out / "grid_results.json") >> grid;
    REQUIRE(grid["cells"].size() == 1);
    const double grid_trust = grid["cells"][0]["trustworthiness"].get<double>();

    const auto reduce_out = dir / "grid1_reduce";
    res = run_cli("reduce --input " + quoted(data) +
                  " --variant e2e --kernel rbf --gamma 0.01 --perplexity 12 "
                  "--iters 70 --seed 3 --out-dir " + quoted(reduce_out));
    REQUIRE(res.exit_code == 0);
    const auto trust_report = dir / "grid1_trust.json";
    res = run_cli("trust --data " + quoted(data) + " --embedding " +
                  quoted(reduce_out / "embedding.csv") +
                  " --k-list 9 --repeats 1 --out " + quoted(trust_report));
    REQUIRE(res.exit_code == 0);
    json report;
    std::ifstream(trust_report) >> report;
    CHECK(report["scores"][0].get<double>() == doctest::Approx(grid_trust).epsilon(1e-12));
    CHECK(slurp(grid_out / "best_embedding.csv") ==
          slurp(reduce_out / "embedding.csv"));
}

TEST_CASE("grid rows cover the whole grid and order is canonical") {
    const auto dir = work_dir();
    const auto out = dir / "grid_full";
    const auto res = run_cli(
        "grid-search --dataset synthetic --n 100 --d 10 --clusters 5 "
        "--variant kernel --kernel rbf --gammas 1e-2,1e-1,1 --perplexities 8,12 "
        "--metric-k 8 --iters 50 --jobs 2 --out-dir " + quoted(out));
    REQUIRE(res.exit_code == 0);
    json grid;
    std::ifstream(out / "grid_results.json") >> grid;
    CHECK(grid["cells"].size() == 6);
    double prev = 2.0;
    for (const auto& cell : grid["cells"]) {
        if (cell["status"] == "ok") {
            const double t = cell["trustworthiness"].get<double>();
            CHECK(t <= prev);
            prev = t;
        }
    }
}

TEST_CASE("diverging grid cells are recorded as failed without killing the run") {
    const auto dir = work_dir();
    const auto out = dir / "grid_fail";
    const auto res = run_cli(
        "grid-search --dataset synthetic --n 500 --variant plain "
        "--gammas 1 --perplexities 10,30 --metric-k 10 --iters 30 "
        "--ee-iters 8 --lr 1e9 --out-dir " + quoted(out));
    CHECK(res.exit_code == 0);
    json grid;
    std::ifstream(out / "grid_results.json") >> grid;
    REQUIRE(grid["cells"].size() == 2);
    int failed = 0;
    for (const auto& cell : grid["cells"]) {
        if (cell["status"] == "failed") {
            ++failed;
            CHECK(cell["error"].get<std::string>().find("diverged") !=
                  std::string::npos);
        }
    }
    CHECK(failed >= 1);
    if (failed == 2) CHECK(!grid.contains("best"));
}

}  // TEST_SUITE
