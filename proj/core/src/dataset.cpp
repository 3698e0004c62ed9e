#include "randlink/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "randlink/errors.hpp"
#include "randlink/rng.hpp"

namespace randlink {

const std::string& Dataset::class_name(int id) const {
    static const std::string empty;
    if (id < 0 || id >= static_cast<int>(class_names.size())) return empty;
    return class_names[static_cast<size_t>(id)];
}

NormMethod parse_norm_method(std::string_view name) {
    if (name == "minmax") return NormMethod::MinMax;
    if (name == "zscore") return NormMethod::ZScore;
    if (name == "none") return NormMethod::None;
    throw usage_error("unknown normalization method: " + std::string(name));
}

std::string_view norm_method_name(NormMethod m) {
    switch (m) {
    case NormMethod::MinMax: return "minmax";
    case NormMethod::ZScore: return "zscore";
    case NormMethod::None: return "none";
    }
    return "none";
}

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !s.empty();
}

bool parse_index(const std::string& s, int& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !s.empty();
}

} // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header, const std::string& dataset_name) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (first && has_header) {
            header = std::move(cells);
            first = false;
            continue;
        }
        first = false;
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw io_error("dataset file has no data rows: " + path);

    size_t width = has_header ? header.size() : rows.front().size();
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw io_error(path + ": row " + std::to_string(r + 1) + " has " +
                           std::to_string(rows[r].size()) + " cells, expected " +
                           std::to_string(width));
    }

    int label_idx = -1;
    if (label_column.empty() || label_column == "last") {
        label_idx = static_cast<int>(width) - 1;
    } else if (int idx; parse_index(label_column, idx)) {
        label_idx = idx;
    } else {
        if (!has_header)
            throw usage_error("label column '" + label_column + "' given by name but the file has no header");
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it == header.end())
            throw usage_error("label column '" + label_column + "' not found in header of " + path);
        label_idx = static_cast<int>(it - header.begin());
    }
    if (label_idx < 0 || label_idx >= static_cast<int>(width))
        throw usage_error("label column index " + std::to_string(label_idx) +
                          " out of range for " + std::to_string(width) + " columns");

    Dataset ds;
    ds.name = dataset_name.empty() ? std::filesystem::path(path).stem().string() : dataset_name;
    Eigen::Index T = static_cast<Eigen::Index>(rows.size());
    Eigen::Index d = static_cast<Eigen::Index>(width) - 1;
    if (d < 1) throw io_error(path + ": no feature columns besides the label");
    ds.features.resize(T, d);
    ds.labels.resize(static_cast<size_t>(T));

    std::map<std::string, int> class_ids; // token -> id, first-appearance order
    for (Eigen::Index r = 0; r < T; ++r) {
        const auto& cells = rows[static_cast<size_t>(r)];
        Eigen::Index c_out = 0;
        for (size_t c = 0; c < width; ++c) {
            if (static_cast<int>(c) == label_idx) continue;
            double v;
            if (!parse_double(cells[c], v))
                throw io_error(path + ": row " + std::to_string(r + 1) + " column " +
                               std::to_string(c) + ": not a number: '" + cells[c] + "'");
            ds.features(r, c_out++) = v;
        }
        const std::string& token = cells[static_cast<size_t>(label_idx)];
        auto [it, inserted] = class_ids.try_emplace(token, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(token);
        ds.labels[static_cast<size_t>(r)] = it->second;
    }
    ds.class_count = static_cast<int>(ds.class_names.size());
    if (ds.class_count < 2)
        throw io_error(path + ": dataset has a single class; need at least two");
    require_finite(ds.features, "dataset features");
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, bool with_header) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write dataset file: " + path);
    out.precision(17);
    if (with_header) {
        for (Eigen::Index c = 0; c < ds.cols(); ++c) out << "f" << c << ",";
        out << "label\n";
    }
    for (Eigen::Index r = 0; r < ds.rows(); ++r) {
        for (Eigen::Index c = 0; c < ds.cols(); ++c) out << ds.features(r, c) << ",";
        int id = ds.labels[static_cast<size_t>(r)];
        if (id >= 0 && id < static_cast<int>(ds.class_names.size()) && !ds.class_names[id].empty())
            out << ds.class_names[static_cast<size_t>(id)];
        else
            out << id;
        out << "\n";
    }
    if (!out) throw io_error("write failed: " + path);
}

NormalizationParams fit_normalization(const DenseMatrix& X, NormMethod method) {
    NormalizationParams p;
    p.method = method;
    if (method == NormMethod::None) return p;
    Eigen::Index d = X.cols();
    p.offset.resize(d);
    p.scale.resize(d);
    if (method == NormMethod::MinMax) {
        for (Eigen::Index c = 0; c < d; ++c) {
            double lo = X.col(c).minCoeff();
            double hi = X.col(c).maxCoeff();
            p.offset[c] = lo;
            p.scale[c] = hi - lo;
        }
    } else {
        for (Eigen::Index c = 0; c < d; ++c) {
            double mean = X.col(c).mean();
            double var = (X.col(c).array() - mean).square().sum() / static_cast<double>(X.rows());
            p.offset[c] = mean;
            p.scale[c] = std::sqrt(var);
        }
    }
    return p;
}

DenseMatrix apply_normalization(const DenseMatrix& X, const NormalizationParams& params) {
    if (params.method == NormMethod::None && params.offset.size() == 0) return X;
    if (X.cols() != params.cols())
        throw std::invalid_argument("apply_normalization: column count mismatch");
    DenseMatrix out(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        double s = params.scale[c];
        if (s == 0.0)
            out.col(c).setZero();
        else
            out.col(c) = (X.col(c).array() - params.offset[c]) / s;
    }
    return out;
}

std::pair<Dataset, NormalizationParams> normalize(const Dataset& ds, NormMethod method) {
    if (ds.rows() == 0) throw std::invalid_argument("normalize: empty dataset");
    NormalizationParams p = fit_normalization(ds.features, method);
    Dataset out = ds;
    out.features = apply_normalization(ds.features, p);
    return {std::move(out), std::move(p)};
}

DenseMatrix one_hot(const std::vector<int>& labels, int class_count) {
    if (class_count < 1) throw std::invalid_argument("one_hot: class_count must be >= 1");
    DenseMatrix Y = DenseMatrix::Zero(static_cast<Eigen::Index>(labels.size()), class_count);
    for (size_t t = 0; t < labels.size(); ++t) {
        int id = labels[t];
        if (id < 0 || id >= class_count)
            throw std::invalid_argument("one_hot: label " + std::to_string(id) + " out of range [0," +
                                        std::to_string(class_count) + ")");
        Y(static_cast<Eigen::Index>(t), id) = 1.0;
    }
    return Y;
}

std::vector<int> FoldPlan::test_indices(int fold) const {
    std::vector<int> out;
    for (size_t i = 0; i < fold_of_sample.size(); ++i)
        if (fold_of_sample[i] == fold) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> FoldPlan::train_indices(int fold) const {
    std::vector<int> out;
    for (size_t i = 0; i < fold_of_sample.size(); ++i)
        if (fold_of_sample[i] != fold) out.push_back(static_cast<int>(i));
    return out;
}

FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
    int T = static_cast<int>(ds.rows());
    if (k < 2) throw usage_error("stratified_kfold: k must be >= 2");
    if (k > T) throw usage_error("stratified_kfold: k = " + std::to_string(k) +
                                 " exceeds sample count " + std::to_string(T));

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.fold_of_sample.assign(static_cast<size_t>(T), -1);

    Rng rng(seed);
    // One global cursor walks folds round-robin across classes, so fold sizes
    // stay within 1 overall and within each class.
    int cursor = 0;
    for (int c = 0; c < ds.class_count; ++c) {
        std::vector<int> members;
        for (int i = 0; i < T; ++i)
            if (ds.labels[static_cast<size_t>(i)] == c) members.push_back(i);
        shuffle_in_place(members, rng);
        for (int i : members) plan.fold_of_sample[static_cast<size_t>(i)] = cursor++ % k;
    }
    return plan;
}

Dataset subset(const Dataset& ds, const std::vector<int>& rows) {
    Dataset out;
    out.name = ds.name;
    out.class_count = ds.class_count;
    out.class_names = ds.class_names;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.cols());
    out.labels.resize(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        int r = rows[i];
        if (r < 0 || r >= static_cast<int>(ds.rows()))
            throw std::invalid_argument("subset: row index out of range");
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(r);
        out.labels[i] = ds.labels[static_cast<size_t>(r)];
    }
    return out;
}

} // namespace randlink
