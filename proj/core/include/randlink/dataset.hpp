#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "randlink/matrix.hpp"

namespace randlink {

struct Dataset {
    DenseMatrix features;                 // T x d
    std::vector<int> labels;              // class ids in [0, K)
    int class_count = 0;                  // K
    std::string name;
    std::vector<std::string> class_names; // id -> original label token

    Eigen::Index rows() const { return features.rows(); }
    Eigen::Index cols() const { return features.cols(); }
    const std::string& class_name(int id) const;
};

enum class NormMethod { MinMax, ZScore, None };

NormMethod parse_norm_method(std::string_view name);
std::string_view norm_method_name(NormMethod m);

struct NormalizationParams {
    NormMethod method = NormMethod::None;
    Vector offset; // per column: min (minmax) or mean (zscore)
    Vector scale;  // per column: max-min or sd; 0 marks a constant column

    bool empty() const { return method == NormMethod::None && offset.size() == 0; }
    Eigen::Index cols() const { return offset.size(); }
};

/// label_column: 0-based index or (with a header) a column name; "" and
/// "last" select the final column.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header, const std::string& dataset_name = "");

void save_csv(const Dataset& ds, const std::string& path, bool with_header = true);

NormalizationParams fit_normalization(const DenseMatrix& X, NormMethod method);
DenseMatrix apply_normalization(const DenseMatrix& X, const NormalizationParams& params);
std::pair<Dataset, NormalizationParams> normalize(const Dataset& ds, NormMethod method);

DenseMatrix one_hot(const std::vector<int>& labels, int class_count);

struct FoldPlan {
    std::vector<int> fold_of_sample;
    int k = 0;
    std::uint64_t seed = 0;

    std::vector<int> test_indices(int fold) const;
    std::vector<int> train_indices(int fold) const;
};

FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed);

Dataset subset(const Dataset& ds, const std::vector<int>& rows);

} // namespace randlink
