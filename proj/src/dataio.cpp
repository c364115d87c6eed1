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
#include "ktsne/dataio.hpp"

#include "ktsne/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

namespace ktsne {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) fields.push_back(trimmed(cur));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

std::uint32_t read_be_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) {
        throw_error(ErrorKind::Format, "IDX file truncated while reading header");
    }
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                            "#bcbd22", "#17becf"};

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw_error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
    return out;
}

}  // namespace

LabeledDataset generate_blobs(Index n, Index d, Index clusters, double spread,
                              std::uint64_t seed) {
    if (n < 1 || d < 1) {
        throw_error(ErrorKind::Parameter, "blob dataset needs n >= 1 and d >= 1");
    }
    if (clusters < 1 || clusters > n) {
        throw_error(ErrorKind::Parameter,
                    "cluster count must lie in [1, n], got " + std::to_string(clusters));
    }
    if (!(spread > 0.0)) {
        throw_error(ErrorKind::Parameter, "spread must be positive");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-10.0, 10.0);
    Matrix centers(clusters, d);
    for (Index c = 0; c < clusters; ++c) {
        for (Index j = 0; j < d; ++j) centers(c, j) = box(rng);
    }

    std::normal_distribution<double> noise(0.0, spread);
    LabeledDataset data;
    data.X.resize(n, d);
    data.labels = std::vector<int>(static_cast<std::size_t>(n));
    data.name = "synthetic";
    for (Index i = 0; i < n; ++i) {
        const Index c = i % clusters;
        for (Index j = 0; j < d; ++j) data.X(i, j) = centers(c, j) + noise(rng);
        (*data.labels)[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
    return data;
}

LabeledDataset load_csv(const std::string& path,
                        const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw_error(ErrorKind::Io, "cannot open '" + path + "'");
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> header;
    bool saw_header = false;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        const auto fields = split_csv_line(line);

        if (rows.empty() && !saw_header) {
            // a first row with any non-numeric cell is a header
            double probe;
            const bool numeric = std::all_of(
                fields.begin(), fields.end(),
                [&](const std::string& f) { return parse_double(f, probe); });
            if (!numeric) {
                header = fields;
                saw_header = true;
                width = fields.size();
                continue;
            }
        }

        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(width) + " fields, found " +
                            std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v;
            if (!parse_double(fields[c], v)) {
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(lineno) + ": column " +
                                std::to_string(c + 1) + ": cannot parse '" +
                                fields[c] + "' as a number");
            }
            if (!std::isfinite(v)) {
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(lineno) + ": column " +
                                std::to_string(c + 1) + ": non-finite value '" +
                                fields[c] + "'");
            }
            row[c] = v;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw_error(ErrorKind::Format, path + ": no data rows");
    }

    // resolve the label column, by header name first, then as an index
    std::optional<std::size_t> label_idx;
    if (label_column) {
        const auto it = std::find(header.begin(), header.end(), *label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else {
            std::size_t idx;
            const char* b = label_column->data();
            auto res = std::from_chars(b, b + label_column->size(), idx);
            if (res.ec == std::errc{} && res.ptr == b + label_column->size() &&
                idx < width) {
                label_idx = idx;
            } else {
                throw_error(ErrorKind::Parameter,
                            path + ": no column named '" + *label_column + "'");
            }
        }
    }

    const std::size_t n = rows.size();
    const std::size_t d = width - (label_idx ? 1 : 0);
    if (d == 0) {
        throw_error(ErrorKind::Format, path + ": no feature columns left");
    }

    LabeledDataset data;
    data.X.resize(static_cast<Index>(n), static_cast<Index>(d));
    if (label_idx) data.labels = std::vector<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < width; ++j) {
            if (label_idx && j == *label_idx) {
                (*data.labels)[i] = static_cast<int>(std::llround(rows[i][j]));
            } else {
                data.X(static_cast<Index>(i), static_cast<Index>(c++)) = rows[i][j];
            }
        }
    }
    const auto slash = path.find_last_of('/');
    data.name = slash == std::string::npos ? path : path.substr(slash + 1);
    return data;
}

LabeledDataset load_idx(const std::string& images_path,
                        const std::optional<std::string>& labels_path) {
    std::ifstream in(images_path, std::ios::binary);
    if (!in) {
        throw_error(ErrorKind::Io, "cannot open '" + images_path + "'");
    }
    const std::uint32_t magic = read_be_u32(in);
    if (magic != 0x00000803u) {
        std::ostringstream msg;
        msg << images_path << ": bad IDX image magic 0x" << std::hex
            << std::setw(8) << std::setfill('0') << magic;
        throw_error(ErrorKind::Format, msg.str());
    }
    const std::uint32_t count = read_be_u32(in);
    const std::uint32_t rows = read_be_u32(in);
    const std::uint32_t cols = read_be_u32(in);
    const std::size_t pixels = std::size_t(rows) * std::size_t(cols);
    if (count == 0 || pixels == 0) {
        throw_error(ErrorKind::Format, images_path + ": empty IDX image file");
    }

    std::vector<unsigned char> buf(pixels);
    LabeledDataset data;
    data.X.resize(static_cast<Index>(count), static_cast<Index>(pixels));
    for (std::uint32_t i = 0; i < count; ++i) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(pixels));
        if (!in) {
            throw_error(ErrorKind::Format,
                        images_path + ": truncated at image " + std::to_string(i));
        }
        for (std::size_t p = 0; p < pixels; ++p) {
            data.X(static_cast<Index>(i), static_cast<Index>(p)) = buf[p] / 255.0;
        }
    }

    if (labels_path) {
        std::ifstream lin(*labels_path, std::ios::binary);
        if (!lin) {
            throw_error(ErrorKind::Io, "cannot open '" + *labels_path + "'");
        }
        const std::uint32_t lmagic = read_be_u32(lin);
        if (lmagic != 0x00000801u) {
            std::ostringstream msg;
            msg << *labels_path << ": bad IDX label magic 0x" << std::hex
                << std::setw(8) << std::setfill('0') << lmagic;
            throw_error(ErrorKind::Format, msg.str());
        }
        const std::uint32_t lcount = read_be_u32(lin);
        if (lcount != count) {
            throw_error(ErrorKind::Format,
                        "label count " + std::to_string(lcount) +
                            " does not match image count " + std::to_string(count));
        }
        std::vector<unsigned char> lbuf(lcount);
        lin.read(reinterpret_cast<char*>(lbuf.data()), static_cast<std::streamsize>(lcount));
        if (!lin) {
            throw_error(ErrorKind::Format, *labels_path + ": truncated label payload");
        }
        data.labels = std::vector<int>(lbuf.begin(), lbuf.end());
    }

    const auto slash = images_path.find_last_of('/');
    data.name = slash == std::string::npos ? images_path : images_path.substr(slash + 1);
    return data;
}

LabeledDataset subsample(const LabeledDataset& data, Index count, std::uint64_t seed) {
    const Index n = data.X.rows();
    if (count < 1 || count > n) {
        throw_error(ErrorKind::Parameter,
                    "subsample count must lie in [1, n], got " + std::to_string(count));
    }
    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    std::vector<Index> keep;
    keep.reserve(static_cast<std::size_t>(count));
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(keep),
                static_cast<std::size_t>(count), rng);

    LabeledDataset out;
    out.X.resize(count, data.X.cols());
    if (data.labels) out.labels = std::vector<int>(static_cast<std::size_t>(count));
    for (Index t = 0; t < count; ++t) {
        out.X.row(t) = data.X.row(keep[static_cast<std::size_t>(t)]);
        if (data.labels) {
            (*out.labels)[static_cast<std::size_t>(t)] =
                (*data.labels)[static_cast<std::size_t>(keep[static_cast<std::size_t>(t)])];
        }
    }
    out.name = data.name;
    return out;
}

void standardize_features(Matrix& X) {
    const double n = static_cast<double>(X.rows());
    for (Index c = 0; c < X.cols(); ++c) {
        const double mean = X.col(c).mean();
        X.col(c).array() -= mean;
        const double sd = std::sqrt(X.col(c).squaredNorm() / n);
        if (sd > 0.0) X.col(c) /= sd;
    }
}

void write_embedding_csv(const Matrix& Y, const std::optional<std::vector<int>>& labels,
                         const std::string& path) {
    if (labels && static_cast<Index>(labels->size()) != Y.rows()) {
        throw_error(ErrorKind::Input, "label count does not match embedding rows");
    }
    auto out = open_for_write(path);
    out << std::setprecision(17);
    for (Index c = 0; c < Y.cols(); ++c) {
        out << (c ? "," : "") << "y" << (c + 1);
    }
    if (labels) out << ",label";
    out << "\n";
    for (Index i = 0; i < Y.rows(); ++i) {
        for (Index c = 0; c < Y.cols(); ++c) {
            out << (c ? "," : "") << Y(i, c);
        }
        if (labels) out << "," << (*labels)[static_cast<std::size_t>(i)];
        out << "\n";
    }
    if (!out) {
        throw_error(ErrorKind::Io, "failed writing '" + path + "'");
    }
}

void write_dataset_csv(const LabeledDataset& data, const std::string& path) {
    auto out = open_for_write(path);
    out << std::setprecision(17);
    for (Index c = 0; c < data.X.cols(); ++c) {
        out << (c ? "," : "") << "f" << (c + 1);
    }
    if (data.labels) out << ",label";
    out << "\n";
    for (Index i = 0; i < data.X.rows(); ++i) {
        for (Index c = 0; c < data.X.cols(); ++c) {
            out << (c ? "," : "") << data.X(i, c);
        }
        if (data.labels) out << "," << (*data.labels)[static_cast<std::size_t>(i)];
        out << "\n";
    }
    if (!out) {
        throw_error(ErrorKind::Io, "failed writing '" + path + "'");
    }
}

void write_report_json(const TrustworthinessReport& report, const std::string& name,
                       const std::string& path) {
    nlohmann::json j;
    j["name"] = name;
    j["k_values"] = report.k_values;
    j["scores"] = report.scores;
    j["n"] = report.n;
    j["repeats"] = report.repeats;
    auto out = open_for_write(path);
    out << j.dump(2) << "\n";
    if (!out) {
        throw_error(ErrorKind::Io, "failed writing '" + path + "'");
    }
}

void render_scatter_svg(const Matrix& Y, const std::optional<std::vector<int>>& labels,
                        const std::string& path) {
    if (Y.cols() != 2) {
        throw_error(ErrorKind::Dimension,
                    "scatter rendering needs a 2-dimensional embedding, got " +
                        std::to_string(Y.cols()));
    }
    if (labels && static_cast<Index>(labels->size()) != Y.rows()) {
        throw_error(ErrorKind::Input, "label count does not match embedding rows");
    }

    constexpr double view = 800.0;
    constexpr double margin = 0.05 * view;
    const double lo_x = Y.col(0).minCoeff();
    const double hi_x = Y.col(0).maxCoeff();
    const double lo_y = Y.col(1).minCoeff();
    const double hi_y = Y.col(1).maxCoeff();
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-30});
    const double scale = (view - 2.0 * margin) / span;
    const double off_x = margin + 0.5 * ((view - 2.0 * margin) - (hi_x - lo_x) * scale);
    const double off_y = margin + 0.5 * ((view - 2.0 * margin) - (hi_y - lo_y) * scale);

    auto out = open_for_write(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n"
        << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    out << std::setprecision(8);
    for (Index i = 0; i < Y.rows(); ++i) {
        const double px = off_x + (Y(i, 0) - lo_x) * scale;
        // SVG y grows downward
        const double py = view - (off_y + (Y(i, 1) - lo_y) * scale);
        const char* color = kPalette[0];
        if (labels) {
            const int lab = (*labels)[static_cast<std::size_t>(i)];
            color = kPalette[((lab % 10) + 10) % 10];
        }
        out << "<circle cx=\"" << px << "\" cy=\"" << py
            << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.8\"/>\n";
    }
    out << "</svg>\n";
    if (!out) {
        throw_error(ErrorKind::Io, "failed writing '" + path + "'");
    }
}

}  // namespace ktsne
