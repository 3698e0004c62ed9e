#include "randlink/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "randlink/errors.hpp"
#include "randlink/textcodec.hpp"

namespace randlink {

namespace {

std::array<double, 2> parse_pair(const KeyValueFile& kv, const std::string& key,
                                 std::array<double, 2> fallback) {
    if (!kv.has(key)) return fallback;
    std::string s = kv.get_string(key);
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw usage_error(kv.origin() + ": key '" + key + "': expected 'lo,hi', got '" + s + "'");
    try {
        double lo = parse_double_strict(std::string_view(s).substr(0, comma));
        double hi = parse_double_strict(std::string_view(s).substr(comma + 1));
        return {lo, hi};
    } catch (const io_error&) {
        throw usage_error(kv.origin() + ": key '" + key + "': expected 'lo,hi', got '" + s + "'");
    }
}

} // namespace

ExperimentConfig experiment_from_kv(const KeyValueFile& kv) {
    ExperimentConfig cfg;

    cfg.dataset_path = kv.get_string("dataset.path", "");
    cfg.label_column = kv.get_string("dataset.label_column", "");
    cfg.has_header = kv.get_bool("dataset.has_header", true);
    cfg.dataset_name = kv.get_string("dataset.name", "");
    cfg.method.normalization =
        parse_norm_method(kv.get_string("dataset.normalize", "minmax"));

    cfg.method.method = parse_method_id(kv.get_string("method", "rvfl"));

    NetworkConfig& net = cfg.method.network;
    net.hidden_nodes = static_cast<int>(kv.get_int("network.hidden_nodes", 100));
    net.layers = static_cast<int>(kv.get_int("network.layers", 1));
    if (kv.has("network.lambda") && kv.has("network.c_exponent"))
        throw usage_error(kv.origin() + ": give network.lambda or network.c_exponent, not both");
    if (kv.has("network.c_exponent"))
        net.lambda = std::exp2(-kv.get_double("network.c_exponent"));
    else
        net.lambda = kv.get_double("network.lambda", 1.0);
    net.bias_in_output = kv.get_bool("network.bias_in_output", false);
    net.hidden_bias = kv.get_bool("network.hidden_bias", true);
    net.activation = parse_activation(kv.get_string("network.activation", "sigmoid"));
    net.weight_range = parse_pair(kv, "network.weight_range", {-1.0, 1.0});
    net.bias_range = parse_pair(kv, "network.bias_range", {0.0, 1.0});
    net.seed = kv.get_uint("seed", 0);

    FistaConfig& fista = cfg.method.fista;
    fista.l1_weight = kv.get_double("fista.l1_weight", 1.0);
    fista.max_iterations = static_cast<int>(kv.get_int("fista.max_iterations", 500));
    fista.tolerance = kv.get_double("fista.tolerance", 1e-6);
    if (std::string step = kv.get_string("fista.step_size", "auto"); step != "auto") {
        try {
            fista.step_size = parse_double_strict(step);
        } catch (const io_error&) {
            throw usage_error(kv.origin() + ": key 'fista.step_size': 'auto' or a number, got '" +
                              step + "'");
        }
    }

    cfg.method.combine = parse_combine_rule(kv.get_string("ensemble.combine", "vote"));
    cfg.method.ensemble_members = static_cast<int>(kv.get_int("ensemble.members", 0));

    cfg.k = static_cast<int>(kv.get_int("cv.folds", 10));

    cfg.grid.c_exponents = kv.get_int_list("grid.c_exponents", cfg.grid.c_exponents);
    cfg.grid.layer_values = kv.get_int_list("grid.layers", cfg.grid.layer_values);
    cfg.grid.node_values = kv.get_int_list("grid.hidden_nodes", cfg.grid.node_values);
    cfg.nested_grid = kv.get_bool("grid.nested", false);

    cfg.output_path = kv.get_string("output.path", "");
    cfg.json_output = kv.get_bool("output.json", false);

    if (auto unknown = kv.unknown_keys(); !unknown.empty()) {
        std::string msg = kv.origin() + ": unknown key(s):";
        for (const auto& k : unknown) msg += " '" + k + "'";
        throw usage_error(msg);
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return experiment_from_kv(KeyValueFile::parse_file(path));
}

Dataset load_config_dataset(const ExperimentConfig& cfg) {
    if (cfg.dataset_path.empty())
        throw usage_error("config is missing dataset.path");
    return load_csv(cfg.dataset_path, cfg.label_column, cfg.has_header, cfg.dataset_name);
}

DenseMatrix load_features_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // strip CR and skip blanks
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (first && has_header) {
            first = false;
            continue;
        }
        first = false;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            std::string t = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
            try {
                row.push_back(parse_double_strict(t));
            } catch (const io_error&) {
                throw io_error(path + ":" + std::to_string(line_no) + ": not a number: '" + t + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw io_error(path + ":" + std::to_string(line_no) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw io_error(path + ": no data rows");
    DenseMatrix X(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.front().size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c)
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return X;
}

} // namespace randlink
