#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "randlink/method.hpp"

namespace randlink {

struct EvalReport {
    std::string method;
    std::string dataset;
    std::vector<double> fold_accuracies; // fraction in [0,1], one per fold
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;           // population std over folds
    double train_seconds = 0.0;          // summed across folds
    double test_seconds = 0.0;
    NetworkConfig chosen_config;
    int k = 0;
    std::uint64_t seed = 0;
};

/// Hook for instrumentation (leakage checks); called once per fold.
struct FoldInfo {
    int fold;
    const std::vector<int>& train_rows;
    const std::vector<int>& test_rows;
    const NormalizationParams& norm;
    const TrainedModel& model;
    double fold_accuracy;
};
using FoldObserver = std::function<void(const FoldInfo&)>;

EvalReport cross_validate(const MethodSpec& spec, const Dataset& ds, int k, std::uint64_t seed,
                          const FoldObserver& observer = {});

struct GridSpec {
    std::vector<int> c_exponents = {-6, -4, -2, 0, 2, 4, 6, 8, 10, 12}; // lambda = 2^-x
    std::vector<int> layer_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> node_values = {100};
};

void validate_grid(const GridSpec& grid);

struct GridCell {
    int c_exponent = 0;
    int layers = 1;
    int hidden_nodes = 100;
    EvalReport report;
};

struct GridResult {
    GridCell best;
    std::vector<GridCell> cells; // canonical order: C asc, then L, then N
};

/// Exhaustive search; best = highest mean accuracy, ties broken toward
/// smaller C, then fewer layers, then fewer nodes. Shallow methods collapse
/// the layer axis to {1}.
GridResult grid_search(const MethodSpec& spec, const Dataset& ds, const GridSpec& grid, int k,
                       std::uint64_t seed);

/// Nested variant: per outer fold, an inner grid search on the training
/// split picks the cell, which is then scored on the held-out fold.
struct NestedGridResult {
    EvalReport report;
    std::vector<GridCell> fold_choices;
};
NestedGridResult nested_grid_search(const MethodSpec& spec, const Dataset& ds,
                                    const GridSpec& grid, int k, std::uint64_t seed);

/// One full-data train pass and one full-data test pass, wall-clock.
std::pair<double, double> time_method(const MethodSpec& spec, const Dataset& ds);

} // namespace randlink
