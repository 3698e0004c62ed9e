#include "randlink/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

#include "randlink/errors.hpp"
#include "randlink/experiment.hpp"
#include "randlink/model_io.hpp"
#include "randlink/report.hpp"
#include "randlink/textcodec.hpp"

namespace randlink {

namespace {

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& o) {
    if (o.method) cfg.method.method = parse_method_id(*o.method);
    if (o.seed) cfg.method.network.seed = *o.seed;
    if (o.k) cfg.k = *o.k;
    if (o.combine) cfg.method.combine = parse_combine_rule(*o.combine);
}

std::string default_output(const ExperimentConfig& cfg, const Dataset& ds,
                           const std::string& suffix) {
    return ds.name + "_" + std::string(method_name(cfg.method.method)) + suffix;
}

std::string pick_output(const std::optional<std::string>& cli_out, const ExperimentConfig& cfg,
                        const std::string& fallback) {
    if (cli_out && !cli_out->empty()) return *cli_out;
    if (!cfg.output_path.empty()) return cfg.output_path;
    return fallback;
}

void print_model_shapes(const TrainedModel& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ShallowModel>) {
                std::printf("  hidden layer: %ldx%ld, beta: %ldx%ld\n",
                            static_cast<long>(m.layer.weights.rows()),
                            static_cast<long>(m.layer.weights.cols()),
                            static_cast<long>(m.beta.rows()), static_cast<long>(m.beta.cols()));
            } else if constexpr (std::is_same_v<T, DeepModel>) {
                std::printf("  layers: %zu, beta: %ldx%ld\n", m.layers.size(),
                            static_cast<long>(m.beta.rows()), static_cast<long>(m.beta.cols()));
            } else if constexpr (std::is_same_v<T, EnsembleDeepModel>) {
                std::printf("  layers: %zu, per-layer beta: %ldx%ld\n", m.layers.size(),
                            m.betas.empty() ? 0L : static_cast<long>(m.betas[0].rows()),
                            m.betas.empty() ? 0L : static_cast<long>(m.betas[0].cols()));
            } else {
                std::printf("  members: %zu, member beta: %ldx%ld\n", m.members.size(),
                            m.members.empty() ? 0L : static_cast<long>(m.members[0].beta.rows()),
                            m.members.empty() ? 0L
                                              : static_cast<long>(m.members[0].beta.cols()));
            }
        },
        model.model);
}

} // namespace

int cmd_train(const std::string& config_path, const std::optional<std::string>& out,
              const CliOverrides& overrides) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, overrides);
    Dataset ds = load_config_dataset(cfg);

    auto [norm_ds, norm] = normalize(ds, cfg.method.normalization);
    auto t0 = std::chrono::steady_clock::now();
    TrainedModel model = train_method(cfg.method, norm_ds);
    double train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    set_model_normalization(model, norm);

    std::string path = pick_output(out, cfg, default_output(cfg, ds, ".model"));
    save_model(model, path);

    std::printf("trained %s on %s (%ldx%ld, %d classes) in %.3f s\n",
                std::string(method_name(cfg.method.method)).c_str(), ds.name.c_str(),
                static_cast<long>(ds.rows()), static_cast<long>(ds.cols()), ds.class_count,
                train_seconds);
    print_model_shapes(model);
    std::printf("model written to %s\n", path.c_str());
    return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::optional<std::string>& label_column, bool has_header,
                const std::optional<std::string>& out) {
    TrainedModel model = load_model(model_path);

    DenseMatrix X;
    std::vector<int> truth;
    bool have_labels = false;
    const std::vector<std::string>& names = model_class_names(model);

    if (label_column && *label_column == "none") {
        X = load_features_csv(data_path, has_header);
    } else {
        Dataset ds = load_csv(data_path, label_column.value_or(""), has_header);
        X = ds.features;
        // Remap file labels through the model's class names so accuracy is
        // comparable even if the file orders classes differently.
        truth.assign(ds.labels.size(), -1);
        bool all_known = true;
        for (size_t i = 0; i < ds.labels.size(); ++i) {
            const std::string& token = ds.class_names[static_cast<size_t>(ds.labels[i])];
            auto it = std::find(names.begin(), names.end(), token);
            if (it == names.end()) {
                all_known = false;
                break;
            }
            truth[i] = static_cast<int>(it - names.begin());
        }
        have_labels = all_known;
    }

    PredictResult pred = predict_method(model, X);

    std::ostringstream body;
    body << "prediction";
    for (Eigen::Index c = 0; c < pred.scores.cols(); ++c) {
        std::string name = c < static_cast<Eigen::Index>(names.size())
                               ? names[static_cast<size_t>(c)]
                               : std::to_string(c);
        body << ",score_" << name;
    }
    body << "\n";
    for (Eigen::Index r = 0; r < pred.scores.rows(); ++r) {
        int label = pred.labels[static_cast<size_t>(r)];
        body << (label < static_cast<int>(names.size()) ? names[static_cast<size_t>(label)]
                                                        : std::to_string(label));
        for (Eigen::Index c = 0; c < pred.scores.cols(); ++c)
            body << "," << format_double(pred.scores(r, c));
        body << "\n";
    }

    if (out && !out->empty()) {
        write_text_file_atomic(*out, body.str());
        std::printf("predictions written to %s (%ld rows)\n", out->c_str(),
                    static_cast<long>(pred.scores.rows()));
    } else {
        std::fputs(body.str().c_str(), stdout);
    }
    if (have_labels)
        std::printf("accuracy = %s\n", format_double(accuracy(pred.labels, truth)).c_str());
    return kExitOk;
}

int cmd_cv(const std::string& config_path, const std::optional<std::string>& out,
           const CliOverrides& overrides, bool json) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, overrides);
    Dataset ds = load_config_dataset(cfg);

    EvalReport report = cross_validate(cfg.method, ds, cfg.k, cfg.method.network.seed);
    std::string path = pick_output(out, cfg, default_output(cfg, ds, "_cv.report"));
    write_report(report_from_eval(report, cfg.method.normalization), path,
                 json || cfg.json_output);

    std::printf("cv method=%s dataset=%s k=%d mean=%.4f std=%.4f\n", report.method.c_str(),
                report.dataset.c_str(), report.k, report.mean_accuracy, report.std_accuracy);
    std::printf("report written to %s\n", path.c_str());
    return kExitOk;
}

int cmd_grid(const std::string& config_path, const std::optional<std::string>& out,
             const CliOverrides& overrides, bool json) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, overrides);
    Dataset ds = load_config_dataset(cfg);

    std::string path = pick_output(out, cfg, default_output(cfg, ds, "_grid.report"));
    if (cfg.nested_grid) {
        NestedGridResult nested =
            nested_grid_search(cfg.method, ds, cfg.grid, cfg.k, cfg.method.network.seed);
        KeyValueFile kv = report_from_eval(nested.report, cfg.method.normalization);
        kv.set("report", "nested-grid");
        for (size_t i = 0; i < nested.fold_choices.size(); ++i) {
            std::string p = "fold." + std::to_string(i) + ".";
            kv.set(p + "c_exponent", std::to_string(nested.fold_choices[i].c_exponent));
            kv.set(p + "layers", std::to_string(nested.fold_choices[i].layers));
            kv.set(p + "hidden_nodes", std::to_string(nested.fold_choices[i].hidden_nodes));
        }
        write_report(kv, path, json || cfg.json_output);
        std::printf("nested-grid method=%s dataset=%s mean=%.4f std=%.4f\n",
                    nested.report.method.c_str(), nested.report.dataset.c_str(),
                    nested.report.mean_accuracy, nested.report.std_accuracy);
    } else {
        GridResult grid = grid_search(cfg.method, ds, cfg.grid, cfg.k, cfg.method.network.seed);
        write_report(report_from_grid(grid, grid.best.report, cfg.method.normalization), path,
                     json || cfg.json_output);
        std::printf("grid method=%s dataset=%s cells=%zu best: C=2^%d L=%d N=%d mean=%.4f\n",
                    grid.best.report.method.c_str(), grid.best.report.dataset.c_str(),
                    grid.cells.size(), grid.best.c_exponent, grid.best.layers,
                    grid.best.hidden_nodes, grid.best.report.mean_accuracy);
    }
    std::printf("report written to %s\n", path.c_str());
    return kExitOk;
}

namespace {

CompareInput input_from_reports(const std::vector<std::string>& report_paths) {
    struct Row {
        std::string method;
        std::string dataset;
        double accuracy;
    };
    std::vector<Row> rows;
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    for (const auto& path : report_paths) {
        EvalReport r = eval_from_report(KeyValueFile::parse_file(path));
        rows.push_back({r.method, r.dataset, r.mean_accuracy});
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
            datasets.push_back(r.dataset);
    }

    CompareInput input;
    input.methods = methods;
    input.datasets = datasets;
    input.accuracies.resize(static_cast<Eigen::Index>(datasets.size()),
                            static_cast<Eigen::Index>(methods.size()));
    DenseMatrix seen = DenseMatrix::Zero(input.accuracies.rows(), input.accuracies.cols());
    for (const Row& row : rows) {
        auto i = static_cast<Eigen::Index>(
            std::find(datasets.begin(), datasets.end(), row.dataset) - datasets.begin());
        auto j = static_cast<Eigen::Index>(
            std::find(methods.begin(), methods.end(), row.method) - methods.begin());
        if (seen(i, j) != 0.0)
            throw usage_error("duplicate report for method '" + row.method + "' on dataset '" +
                              row.dataset + "'");
        seen(i, j) = 1.0;
        input.accuracies(i, j) = row.accuracy;
    }
    for (Eigen::Index i = 0; i < seen.rows(); ++i)
        for (Eigen::Index j = 0; j < seen.cols(); ++j)
            if (seen(i, j) == 0.0)
                throw usage_error("mismatched dataset coverage: no report for method '" +
                                  input.methods[static_cast<size_t>(j)] + "' on dataset '" +
                                  input.datasets[static_cast<size_t>(i)] + "'");
    return input;
}

CompareInput input_from_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open matrix file: " + path);
    CompareInput input;
    std::vector<std::vector<double>> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            if (cells.size() < 3)
                throw usage_error(path + ": matrix header needs 'dataset' plus >= 2 method names");
            for (size_t c = 1; c < cells.size(); ++c) input.methods.push_back(cells[c]);
            first = false;
            continue;
        }
        if (cells.size() != input.methods.size() + 1)
            throw io_error(path + ": ragged matrix row '" + line + "'");
        input.datasets.push_back(cells[0]);
        std::vector<double> row;
        for (size_t c = 1; c < cells.size(); ++c) row.push_back(parse_double_strict(cells[c]));
        values.push_back(std::move(row));
    }
    if (values.size() < 2)
        throw usage_error(path + ": need at least 2 dataset rows");
    input.accuracies.resize(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(input.methods.size()));
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = 0; j < values[i].size(); ++j)
            input.accuracies(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i][j];
    return input;
}

} // namespace

int cmd_compare(const std::vector<std::string>& report_paths,
                const std::optional<std::string>& matrix_path, double alpha, double f_critical,
                const std::optional<std::string>& out, bool json) {
    if (matrix_path && !report_paths.empty())
        throw usage_error("give either report files or --matrix, not both");
    if (!matrix_path && report_paths.size() < 4)
        throw usage_error("need at least 4 reports (>= 2 methods x >= 2 datasets) or --matrix");

    CompareInput input =
        matrix_path ? input_from_matrix(*matrix_path) : input_from_reports(report_paths);
    CompareOutcome outcome = run_comparison(input, alpha, f_critical);

    std::string path = out && !out->empty() ? *out : "compare.report";
    write_report(report_from_comparison(outcome), path, json);

    std::printf("compare: %zu methods x %zu datasets\n", input.methods.size(),
                input.datasets.size());
    for (size_t j = 0; j < input.methods.size(); ++j)
        std::printf("  avg rank %-14s %.4f\n", input.methods[j].c_str(),
                    outcome.ranks.avg_ranks[j]);
    std::printf("friedman chi2=%.4f", outcome.friedman.chi_squared);
    if (outcome.friedman.f_defined)
        std::printf(" F=%.4f (df %d, %d)", outcome.friedman.f_statistic, outcome.friedman.df1,
                    outcome.friedman.df2);
    else
        std::printf(" F undefined (chi2 at ceiling M(m-1))");
    std::printf("\nnemenyi q=%.3f CD=%.4f\n", outcome.nemenyi.q_alpha,
                outcome.nemenyi.critical_difference);
    for (const RankPair& p : outcome.pairs)
        if (p.significant)
            std::printf("  significant: %s vs %s (diff %.4f)\n",
                        input.methods[static_cast<size_t>(p.first)].c_str(),
                        input.methods[static_cast<size_t>(p.second)].c_str(), p.rank_difference);
    std::printf("report written to %s\n", path.c_str());
    return kExitOk;
}

int cmd_bench(const std::string& config_path, const CliOverrides& overrides,
              const std::optional<std::string>& out) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, overrides);
    Dataset ds = load_config_dataset(cfg);

    auto [train_seconds, test_seconds] = time_method(cfg.method, ds);
    std::printf("bench method=%s dataset=%s T=%ld d=%ld\n",
                std::string(method_name(cfg.method.method)).c_str(), ds.name.c_str(),
                static_cast<long>(ds.rows()), static_cast<long>(ds.cols()));
    std::printf("train_seconds = %s\n", format_double(train_seconds).c_str());
    std::printf("test_seconds = %s\n", format_double(test_seconds).c_str());

    if (out && !out->empty()) {
        KeyValueFile kv;
        kv.set("report", "bench");
        kv.set("format", "1");
        kv.set("method", std::string(method_name(cfg.method.method)));
        kv.set("dataset", ds.name);
        kv.set("train_seconds", format_double(train_seconds));
        kv.set("test_seconds", format_double(test_seconds));
        write_report(kv, *out, cfg.json_output);
        std::printf("report written to %s\n", out->c_str());
    }
    return kExitOk;
}

int run_guarded(const char* command, int (*fn)(void*), void* ctx) {
    try {
        return fn(ctx);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "%s: usage error: %s\n", command, e.what());
        return kExitUsage;
    } catch (const io_error& e) {
        std::fprintf(stderr, "%s: i/o error: %s\n", command, e.what());
        return kExitIo;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "%s: numeric error: %s\n", command, e.what());
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s: numeric error: %s\n", command, e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: error: %s\n", command, e.what());
        return kExitFailure;
    }
}

} // namespace randlink
