#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "randlink/activation.hpp"
#include "randlink/dataset.hpp"
#include "randlink/matrix.hpp"
#include "randlink/rng.hpp"

namespace randlink {

/// Randomly generated and kept fixed; only the output weights are trained.
struct HiddenLayerParams {
    DenseMatrix weights; // d_in x N
    Vector biases;       // N (empty when hidden biases are disabled)
    Activation activation = Activation::Sigmoid;

    Eigen::Index input_width() const { return weights.rows(); }
    Eigen::Index nodes() const { return weights.cols(); }
};

struct NetworkConfig {
    int hidden_nodes = 100;       // N
    int layers = 1;               // L
    double lambda = 1.0;          // ridge weight, 1/C; 0 selects the pseudoinverse
    bool direct_links = true;
    bool bias_in_output = false;  // constant-1 column in the design matrix
    bool hidden_bias = true;      // per-layer additive biases
    Activation activation = Activation::Sigmoid;
    std::uint64_t seed = 0;
    std::array<double, 2> weight_range{-1.0, 1.0};
    std::array<double, 2> bias_range{0.0, 1.0};
};

void validate_config(const NetworkConfig& cfg);

struct ShallowModel {
    HiddenLayerParams layer;
    DenseMatrix beta;
    NetworkConfig config;
    NormalizationParams norm;
    int class_count = 0;
    std::vector<std::string> class_names;
};

struct PredictResult {
    std::vector<int> labels;
    DenseMatrix scores; // T x K
};

HiddenLayerParams random_layer(int d_in, int n_nodes, std::uint64_t seed,
                               std::array<double, 2> weight_range,
                               std::array<double, 2> bias_range,
                               Activation activation = Activation::Sigmoid,
                               bool with_bias = true);

/// Stream variant: consumes weights row-major, then biases, from rng.
HiddenLayerParams random_layer_from(Rng& rng, int d_in, int n_nodes,
                                    const NetworkConfig& cfg);

/// H = g(X W + b).
DenseMatrix hidden_output(const DenseMatrix& X, const HiddenLayerParams& layer);

/// [H_1 .. H_L (X) (1)]; X included iff direct_links, the constant column
/// iff bias_in_output.
DenseMatrix assemble_design(const std::vector<const DenseMatrix*>& hidden,
                            const DenseMatrix& X, bool direct_links, bool bias_in_output);

/// Ridge when lambda > 0, minimum-norm pseudoinverse when lambda == 0.
DenseMatrix solve_output_weights(const DenseMatrix& D, const DenseMatrix& Y, double lambda);

ShallowModel train_rvfl(const Dataset& ds, const NetworkConfig& cfg);
ShallowModel train_elm(const Dataset& ds, const NetworkConfig& cfg);

/// Test hook: train with an externally supplied hidden layer.
ShallowModel train_shallow_with_layer(const Dataset& ds, const NetworkConfig& cfg,
                                      HiddenLayerParams layer);

PredictResult predict(const ShallowModel& model, const DenseMatrix& X);

std::vector<int> argmax_rows(const DenseMatrix& scores); // ties -> lowest index
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

} // namespace randlink
