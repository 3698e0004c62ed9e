#include "randlink/eval.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <tuple>

#include "randlink/errors.hpp"
#include "randlink/parallel.hpp"

namespace randlink {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct FoldOutcome {
    double accuracy = 0.0;
    double train_seconds = 0.0;
    double test_seconds = 0.0;
};

FoldOutcome run_fold(const MethodSpec& spec, const Dataset& ds, const FoldPlan& plan, int fold,
                     std::uint64_t base_seed, const FoldObserver& observer) {
    std::vector<int> train_rows = plan.train_indices(fold);
    std::vector<int> test_rows = plan.test_indices(fold);

    Dataset train_ds = subset(ds, train_rows);
    NormalizationParams norm = fit_normalization(train_ds.features, spec.normalization);
    train_ds.features = apply_normalization(train_ds.features, norm);

    MethodSpec fold_spec = spec;
    fold_spec.network.seed = mix_seed(base_seed, static_cast<std::uint64_t>(fold));

    FoldOutcome out;
    auto t0 = Clock::now();
    TrainedModel model = train_method(fold_spec, train_ds);
    set_model_normalization(model, norm);
    out.train_seconds = seconds_since(t0);

    Dataset test_ds = subset(ds, test_rows);
    auto t1 = Clock::now();
    PredictResult pred = predict_method(model, test_ds.features);
    out.test_seconds = seconds_since(t1);
    out.accuracy = accuracy(pred.labels, test_ds.labels);

    if (observer)
        observer(FoldInfo{fold, train_rows, test_rows, norm, model, out.accuracy});
    return out;
}

void fill_summary(EvalReport& report) {
    double mean = 0.0;
    for (double a : report.fold_accuracies) mean += a;
    mean /= static_cast<double>(report.fold_accuracies.size());
    double var = 0.0;
    for (double a : report.fold_accuracies) var += (a - mean) * (a - mean);
    var /= static_cast<double>(report.fold_accuracies.size());
    report.mean_accuracy = mean;
    report.std_accuracy = std::sqrt(var);
}

} // namespace

EvalReport cross_validate(const MethodSpec& spec, const Dataset& ds, int k, std::uint64_t seed,
                          const FoldObserver& observer) {
    FoldPlan plan = stratified_kfold(ds, k, seed);

    EvalReport report;
    report.method = std::string(method_name(spec.method));
    report.dataset = ds.name;
    report.k = k;
    report.seed = seed;
    report.chosen_config = effective_network(spec);
    report.fold_accuracies.resize(static_cast<size_t>(k));

    std::vector<FoldOutcome> outcomes(static_cast<size_t>(k));
    parallel_for(k, [&](int fold) {
        outcomes[static_cast<size_t>(fold)] = run_fold(spec, ds, plan, fold, seed, observer);
    });
    for (int fold = 0; fold < k; ++fold) {
        report.fold_accuracies[static_cast<size_t>(fold)] = outcomes[static_cast<size_t>(fold)].accuracy;
        report.train_seconds += outcomes[static_cast<size_t>(fold)].train_seconds;
        report.test_seconds += outcomes[static_cast<size_t>(fold)].test_seconds;
    }
    fill_summary(report);
    return report;
}

void validate_grid(const GridSpec& grid) {
    if (grid.c_exponents.empty() || grid.layer_values.empty() || grid.node_values.empty())
        throw usage_error("grid axes must be nonempty");
    for (int l : grid.layer_values)
        if (l < 1) throw usage_error("grid layer values must be >= 1");
    for (int n : grid.node_values)
        if (n < 1) throw usage_error("grid node values must be >= 1");
}

namespace {

GridSpec effective_grid(const MethodSpec& spec, GridSpec grid) {
    if (!method_is_deep(spec.method)) grid.layer_values = {1};
    return grid;
}

MethodSpec cell_spec(const MethodSpec& spec, const GridCell& cell) {
    MethodSpec s = spec;
    s.network.lambda = std::exp2(static_cast<double>(-cell.c_exponent));
    s.network.layers = cell.layers;
    s.network.hidden_nodes = cell.hidden_nodes;
    return s;
}

} // namespace

GridResult grid_search(const MethodSpec& spec, const Dataset& ds, const GridSpec& grid_in, int k,
                       std::uint64_t seed) {
    validate_grid(grid_in);
    GridSpec grid = effective_grid(spec, grid_in);

    GridResult result;
    for (int x : grid.c_exponents)
        for (int l : grid.layer_values)
            for (int n : grid.node_values)
                result.cells.push_back(GridCell{x, l, n, {}});

    parallel_for(static_cast<int>(result.cells.size()), [&](int i) {
        GridCell& cell = result.cells[static_cast<size_t>(i)];
        // Same base seed everywhere: cells share fold splits and layer draws,
        // so cell differences isolate the hyperparameters.
        cell.report = cross_validate(cell_spec(spec, cell), ds, k, seed);
    });

    size_t best = 0;
    for (size_t i = 1; i < result.cells.size(); ++i)
        if (result.cells[i].report.mean_accuracy > result.cells[best].report.mean_accuracy)
            best = i;
    result.best = result.cells[best];
    return result;
}

NestedGridResult nested_grid_search(const MethodSpec& spec, const Dataset& ds,
                                    const GridSpec& grid_in, int k, std::uint64_t seed) {
    validate_grid(grid_in);
    GridSpec grid = effective_grid(spec, grid_in);
    FoldPlan plan = stratified_kfold(ds, k, seed);

    NestedGridResult result;
    result.report.method = std::string(method_name(spec.method));
    result.report.dataset = ds.name;
    result.report.k = k;
    result.report.seed = seed;
    result.report.fold_accuracies.resize(static_cast<size_t>(k));
    result.fold_choices.resize(static_cast<size_t>(k));

    std::vector<FoldOutcome> outcomes(static_cast<size_t>(k));
    parallel_for(k, [&](int fold) {
        Dataset outer_train = subset(ds, plan.train_indices(fold));
        std::uint64_t inner_seed = mix_seed(seed, 0x6e657374ULL + static_cast<std::uint64_t>(fold));
        GridResult inner = grid_search(spec, outer_train, grid, k, inner_seed);
        result.fold_choices[static_cast<size_t>(fold)] = inner.best;

        MethodSpec chosen = cell_spec(spec, inner.best);
        outcomes[static_cast<size_t>(fold)] = run_fold(chosen, ds, plan, fold, seed, {});
    });

    for (int fold = 0; fold < k; ++fold) {
        result.report.fold_accuracies[static_cast<size_t>(fold)] =
            outcomes[static_cast<size_t>(fold)].accuracy;
        result.report.train_seconds += outcomes[static_cast<size_t>(fold)].train_seconds;
        result.report.test_seconds += outcomes[static_cast<size_t>(fold)].test_seconds;
    }
    fill_summary(result.report);

    // Representative config: the most frequently chosen cell (first on ties).
    std::map<std::tuple<int, int, int>, int> counts;
    for (const GridCell& c : result.fold_choices) ++counts[{c.c_exponent, c.layers, c.hidden_nodes}];
    const GridCell* rep = &result.fold_choices.front();
    int best_count = 0;
    for (const GridCell& c : result.fold_choices) {
        int n = counts[{c.c_exponent, c.layers, c.hidden_nodes}];
        if (n > best_count) {
            best_count = n;
            rep = &c;
        }
    }
    MethodSpec rep_spec = cell_spec(spec, *rep);
    result.report.chosen_config = effective_network(rep_spec);
    return result;
}

std::pair<double, double> time_method(const MethodSpec& spec, const Dataset& ds) {
    auto [norm_ds, norm] = normalize(ds, spec.normalization);

    auto t0 = Clock::now();
    TrainedModel model = train_method(spec, norm_ds);
    double train_seconds = seconds_since(t0);

    set_model_normalization(model, norm);
    auto t1 = Clock::now();
    (void)predict_method(model, ds.features);
    double test_seconds = seconds_since(t1);
    return {train_seconds, test_seconds};
}

} // namespace randlink
