#pragma once

#include <string>

#include "randlink/eval.hpp"
#include "randlink/keyval.hpp"

namespace randlink {

/// Everything a CLI run needs, assembled from a flat key=value config file.
struct ExperimentConfig {
    std::string dataset_path;
    std::string label_column;   // "" selects the last column
    bool has_header = true;
    std::string dataset_name;   // "" falls back to the file stem
    MethodSpec method;
    GridSpec grid;
    bool nested_grid = false;
    int k = 10;
    std::string output_path;    // "" lets each command pick a default
    bool json_output = false;
};

ExperimentConfig experiment_from_kv(const KeyValueFile& kv);
ExperimentConfig load_experiment_config(const std::string& path);

Dataset load_config_dataset(const ExperimentConfig& cfg);

/// Features-only CSV (no label column), for prediction inputs.
DenseMatrix load_features_csv(const std::string& path, bool has_header);

} // namespace randlink
