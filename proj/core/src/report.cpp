#include "randlink/report.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "randlink/errors.hpp"
#include "randlink/textcodec.hpp"

namespace randlink {

std::string render_key_value(const KeyValueFile& kv) {
    std::string out;
    for (const auto& key : kv.keys()) {
        out += key;
        out += " = ";
        out += kv.get_string(key);
        out += "\n";
    }
    return out;
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw io_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

static std::string json_from_kv(const KeyValueFile& kv) {
    nlohmann::ordered_json j;
    for (const auto& key : kv.keys()) j[key] = kv.get_string(key);
    return j.dump(2) + "\n";
}

void write_report(const KeyValueFile& kv, const std::string& path, bool also_json) {
    write_text_file_atomic(path, render_key_value(kv));
    if (also_json)
        write_text_file_atomic(path + ".json", json_from_kv(kv));
}

static void put_network(KeyValueFile& kv, const NetworkConfig& net) {
    kv.set("network.hidden_nodes", std::to_string(net.hidden_nodes));
    kv.set("network.layers", std::to_string(net.layers));
    kv.set("network.lambda", format_double(net.lambda));
    kv.set("network.direct_links", net.direct_links ? "true" : "false");
    kv.set("network.bias_in_output", net.bias_in_output ? "true" : "false");
    kv.set("network.hidden_bias", net.hidden_bias ? "true" : "false");
    kv.set("network.activation", std::string(activation_name(net.activation)));
    kv.set("network.weight_range",
           format_double(net.weight_range[0]) + "," + format_double(net.weight_range[1]));
    kv.set("network.bias_range",
           format_double(net.bias_range[0]) + "," + format_double(net.bias_range[1]));
}

KeyValueFile report_from_eval(const EvalReport& report, NormMethod normalization) {
    KeyValueFile kv;
    kv.set("report", "cv");
    kv.set("format", "1");
    kv.set("method", report.method);
    kv.set("dataset", report.dataset);
    kv.set("k", std::to_string(report.k));
    kv.set("seed", std::to_string(report.seed));
    kv.set("normalization", std::string(norm_method_name(normalization)));
    put_network(kv, report.chosen_config);
    kv.set("fold_count", std::to_string(report.fold_accuracies.size()));
    for (size_t i = 0; i < report.fold_accuracies.size(); ++i)
        kv.set("fold." + std::to_string(i) + ".accuracy", format_double(report.fold_accuracies[i]));
    kv.set("mean_accuracy", format_double(report.mean_accuracy));
    kv.set("std_accuracy", format_double(report.std_accuracy));
    kv.set("train_seconds", format_double(report.train_seconds));
    kv.set("test_seconds", format_double(report.test_seconds));
    return kv;
}

EvalReport eval_from_report(const KeyValueFile& kv) {
    if (kv.get_string("report", "") != "cv")
        throw io_error(kv.origin() + ": not a cv report");
    EvalReport report;
    report.method = kv.get_string("method");
    report.dataset = kv.get_string("dataset");
    report.k = static_cast<int>(kv.get_int("k"));
    report.seed = kv.get_uint("seed", 0);
    long long folds = kv.get_int("fold_count");
    for (long long i = 0; i < folds; ++i)
        report.fold_accuracies.push_back(kv.get_double("fold." + std::to_string(i) + ".accuracy"));
    report.mean_accuracy = kv.get_double("mean_accuracy");
    report.std_accuracy = kv.get_double("std_accuracy");
    report.train_seconds = kv.get_double("train_seconds", 0.0);
    report.test_seconds = kv.get_double("test_seconds", 0.0);
    report.chosen_config.hidden_nodes = static_cast<int>(kv.get_int("network.hidden_nodes", 100));
    report.chosen_config.layers = static_cast<int>(kv.get_int("network.layers", 1));
    report.chosen_config.lambda = kv.get_double("network.lambda", 1.0);
    report.chosen_config.direct_links = kv.get_bool("network.direct_links", true);
    report.chosen_config.bias_in_output = kv.get_bool("network.bias_in_output", false);
    report.chosen_config.hidden_bias = kv.get_bool("network.hidden_bias", true);
    report.chosen_config.activation =
        parse_activation(kv.get_string("network.activation", "sigmoid"));
    return report;
}

KeyValueFile report_from_grid(const GridResult& grid, const EvalReport& best_report,
                              NormMethod normalization) {
    KeyValueFile kv;
    kv.set("report", "grid");
    kv.set("format", "1");
    kv.set("method", best_report.method);
    kv.set("dataset", best_report.dataset);
    kv.set("k", std::to_string(best_report.k));
    kv.set("seed", std::to_string(best_report.seed));
    kv.set("normalization", std::string(norm_method_name(normalization)));
    kv.set("cell_count", std::to_string(grid.cells.size()));
    for (size_t i = 0; i < grid.cells.size(); ++i) {
        const GridCell& cell = grid.cells[i];
        std::string p = "cell." + std::to_string(i) + ".";
        kv.set(p + "c_exponent", std::to_string(cell.c_exponent));
        kv.set(p + "layers", std::to_string(cell.layers));
        kv.set(p + "hidden_nodes", std::to_string(cell.hidden_nodes));
        kv.set(p + "mean_accuracy", format_double(cell.report.mean_accuracy));
        kv.set(p + "std_accuracy", format_double(cell.report.std_accuracy));
    }
    kv.set("best.c_exponent", std::to_string(grid.best.c_exponent));
    kv.set("best.layers", std::to_string(grid.best.layers));
    kv.set("best.hidden_nodes", std::to_string(grid.best.hidden_nodes));
    put_network(kv, best_report.chosen_config);
    kv.set("fold_count", std::to_string(best_report.fold_accuracies.size()));
    for (size_t i = 0; i < best_report.fold_accuracies.size(); ++i)
        kv.set("fold." + std::to_string(i) + ".accuracy",
               format_double(best_report.fold_accuracies[i]));
    kv.set("mean_accuracy", format_double(best_report.mean_accuracy));
    kv.set("std_accuracy", format_double(best_report.std_accuracy));
    kv.set("train_seconds", format_double(best_report.train_seconds));
    kv.set("test_seconds", format_double(best_report.test_seconds));
    return kv;
}

CompareOutcome run_comparison(const CompareInput& input, double alpha, double f_critical) {
    if (input.accuracies.rows() != static_cast<Eigen::Index>(input.datasets.size()) ||
        input.accuracies.cols() != static_cast<Eigen::Index>(input.methods.size()))
        throw std::invalid_argument("run_comparison: matrix shape does not match labels");

    CompareOutcome out;
    out.input = input;
    out.ranks = rank_matrix(input.accuracies);
    out.friedman = friedman(out.ranks);
    out.nemenyi = nemenyi_cd(static_cast<int>(input.methods.size()),
                             static_cast<int>(input.datasets.size()), alpha);
    out.pairs = significance_pairs(out.ranks.avg_ranks, out.nemenyi.critical_difference);
    out.f_critical = f_critical;
    return out;
}

KeyValueFile report_from_comparison(const CompareOutcome& outcome) {
    KeyValueFile kv;
    kv.set("report", "compare");
    kv.set("format", "1");
    kv.set("classifiers", std::to_string(outcome.input.methods.size()));
    kv.set("datasets", std::to_string(outcome.input.datasets.size()));
    for (size_t j = 0; j < outcome.input.methods.size(); ++j)
        kv.set("method." + std::to_string(j), outcome.input.methods[j]);
    for (size_t i = 0; i < outcome.input.datasets.size(); ++i)
        kv.set("dataset." + std::to_string(i), outcome.input.datasets[i]);
    for (size_t i = 0; i < outcome.input.datasets.size(); ++i)
        for (size_t j = 0; j < outcome.input.methods.size(); ++j) {
            std::string p = "cell." + std::to_string(i) + "." + std::to_string(j);
            kv.set(p + ".accuracy", format_double(outcome.input.accuracies(
                                        static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
            kv.set(p + ".rank", format_double(outcome.ranks.ranks(static_cast<Eigen::Index>(i),
                                                                  static_cast<Eigen::Index>(j))));
        }
    for (size_t j = 0; j < outcome.ranks.avg_ranks.size(); ++j)
        kv.set("avg_rank." + std::to_string(j), format_double(outcome.ranks.avg_ranks[j]));
    kv.set("friedman.chi_squared", format_double(outcome.friedman.chi_squared));
    kv.set("friedman.f_defined", outcome.friedman.f_defined ? "true" : "false");
    if (outcome.friedman.f_defined)
        kv.set("friedman.f_statistic", format_double(outcome.friedman.f_statistic));
    kv.set("friedman.df1", std::to_string(outcome.friedman.df1));
    kv.set("friedman.df2", std::to_string(outcome.friedman.df2));
    if (outcome.f_critical > 0.0) {
        kv.set("friedman.f_critical", format_double(outcome.f_critical));
        // An undefined F means the chi-squared hit its ceiling (unanimous
        // rankings); treat it as beyond any finite critical value.
        bool reject = !outcome.friedman.f_defined ||
                      outcome.friedman.f_statistic > outcome.f_critical;
        kv.set("friedman.reject_null", reject ? "true" : "false");
    }
    kv.set("nemenyi.alpha", format_double(outcome.nemenyi.alpha));
    kv.set("nemenyi.q_alpha", format_double(outcome.nemenyi.q_alpha));
    kv.set("nemenyi.critical_difference", format_double(outcome.nemenyi.critical_difference));
    kv.set("pair_count", std::to_string(outcome.pairs.size()));
    for (size_t i = 0; i < outcome.pairs.size(); ++i) {
        const RankPair& p = outcome.pairs[i];
        std::string key = "pair." + std::to_string(i) + ".";
        kv.set(key + "first", outcome.input.methods[static_cast<size_t>(p.first)]);
        kv.set(key + "second", outcome.input.methods[static_cast<size_t>(p.second)]);
        kv.set(key + "rank_difference", format_double(p.rank_difference));
        kv.set(key + "significant", p.significant ? "true" : "false");
    }
    return kv;
}

} // namespace randlink
