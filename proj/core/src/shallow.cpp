#include "randlink/shallow.hpp"

#include <string>

#include "randlink/errors.hpp"
#include "randlink/linalg.hpp"

namespace randlink {

void validate_config(const NetworkConfig& cfg) {
    if (cfg.hidden_nodes < 1) throw std::invalid_argument("hidden_nodes must be >= 1");
    if (cfg.layers < 1) throw std::invalid_argument("layers must be >= 1");
    if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(cfg.weight_range[0] < cfg.weight_range[1]))
        throw std::invalid_argument("weight_range must satisfy lo < hi");
    if (cfg.hidden_bias && !(cfg.bias_range[0] < cfg.bias_range[1]))
        throw std::invalid_argument("bias_range must satisfy lo < hi");
}

HiddenLayerParams random_layer(int d_in, int n_nodes, std::uint64_t seed,
                               std::array<double, 2> weight_range,
                               std::array<double, 2> bias_range,
                               Activation activation, bool with_bias) {
    NetworkConfig cfg;
    cfg.hidden_nodes = n_nodes;
    cfg.weight_range = weight_range;
    cfg.bias_range = bias_range;
    cfg.activation = activation;
    cfg.hidden_bias = with_bias;
    validate_config(cfg);
    Rng rng(seed);
    return random_layer_from(rng, d_in, n_nodes, cfg);
}

HiddenLayerParams random_layer_from(Rng& rng, int d_in, int n_nodes, const NetworkConfig& cfg) {
    if (d_in < 1) throw std::invalid_argument("random_layer: input width must be >= 1");
    HiddenLayerParams layer;
    layer.activation = cfg.activation;
    layer.weights.resize(d_in, n_nodes);
    // Row-major draw order is part of the serialization/determinism contract.
    for (int r = 0; r < d_in; ++r)
        for (int c = 0; c < n_nodes; ++c)
            layer.weights(r, c) = uniform_in(rng, cfg.weight_range[0], cfg.weight_range[1]);
    if (cfg.hidden_bias) {
        layer.biases.resize(n_nodes);
        for (int c = 0; c < n_nodes; ++c)
            layer.biases[c] = uniform_in(rng, cfg.bias_range[0], cfg.bias_range[1]);
    }
    return layer;
}

DenseMatrix hidden_output(const DenseMatrix& X, const HiddenLayerParams& layer) {
    if (X.cols() != layer.input_width())
        throw std::invalid_argument("hidden_output: input has " + std::to_string(X.cols()) +
                                    " columns, layer expects " + std::to_string(layer.input_width()));
    DenseMatrix pre = X * layer.weights;
    if (layer.biases.size() > 0) pre.rowwise() += layer.biases.transpose();
    return apply_activation(pre, layer.activation);
}

DenseMatrix assemble_design(const std::vector<const DenseMatrix*>& hidden,
                            const DenseMatrix& X, bool direct_links, bool bias_in_output) {
    Eigen::Index T = X.rows();
    Eigen::Index cols = 0;
    for (const DenseMatrix* h : hidden) {
        if (h->rows() != T) throw std::invalid_argument("assemble_design: row count mismatch");
        cols += h->cols();
    }
    if (direct_links) cols += X.cols();
    if (bias_in_output) cols += 1;
    DenseMatrix D(T, cols);
    Eigen::Index at = 0;
    for (const DenseMatrix* h : hidden) {
        D.middleCols(at, h->cols()) = *h;
        at += h->cols();
    }
    if (direct_links) {
        D.middleCols(at, X.cols()) = X;
        at += X.cols();
    }
    if (bias_in_output) D.col(at).setOnes();
    return D;
}

DenseMatrix solve_output_weights(const DenseMatrix& D, const DenseMatrix& Y, double lambda) {
    if (lambda == 0.0) return pinv_solve(D, Y);
    return ridge_solve(D, Y, lambda, RidgeMode::Auto);
}

static ShallowModel finish_shallow(const Dataset& ds, const NetworkConfig& cfg,
                                   HiddenLayerParams layer) {
    ShallowModel model;
    model.config = cfg;
    model.class_count = ds.class_count;
    model.class_names = ds.class_names;
    DenseMatrix H = hidden_output(ds.features, layer);
    model.layer = std::move(layer);
    DenseMatrix D = assemble_design({&H}, ds.features, cfg.direct_links, cfg.bias_in_output);
    DenseMatrix Y = one_hot(ds.labels, ds.class_count);
    model.beta = solve_output_weights(D, Y, cfg.lambda);
    return model;
}

ShallowModel train_rvfl(const Dataset& ds, const NetworkConfig& cfg) {
    validate_config(cfg);
    if (cfg.layers != 1) throw std::invalid_argument("train_rvfl: layers must be 1");
    if (ds.rows() == 0) throw std::invalid_argument("train_rvfl: empty dataset");
    Rng rng(cfg.seed);
    HiddenLayerParams layer =
        random_layer_from(rng, static_cast<int>(ds.cols()), cfg.hidden_nodes, cfg);
    return finish_shallow(ds, cfg, std::move(layer));
}

ShallowModel train_elm(const Dataset& ds, const NetworkConfig& cfg) {
    NetworkConfig elm_cfg = cfg;
    elm_cfg.direct_links = false;
    elm_cfg.bias_in_output = false;
    return train_rvfl(ds, elm_cfg);
}

ShallowModel train_shallow_with_layer(const Dataset& ds, const NetworkConfig& cfg,
                                      HiddenLayerParams layer) {
    validate_config(cfg);
    if (ds.rows() == 0) throw std::invalid_argument("train_shallow_with_layer: empty dataset");
    return finish_shallow(ds, cfg, std::move(layer));
}

PredictResult predict(const ShallowModel& model, const DenseMatrix& X) {
    DenseMatrix Xn = apply_normalization(X, model.norm);
    if (Xn.cols() != model.layer.input_width())
        throw std::invalid_argument("predict: feature width mismatch");
    DenseMatrix H = hidden_output(Xn, model.layer);
    DenseMatrix D = assemble_design({&H}, Xn, model.config.direct_links, model.config.bias_in_output);
    PredictResult out;
    out.scores = D * model.beta;
    out.labels = argmax_rows(out.scores);
    return out;
}

std::vector<int> argmax_rows(const DenseMatrix& scores) {
    std::vector<int> labels(static_cast<size_t>(scores.rows()));
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        int best = 0;
        for (Eigen::Index c = 1; c < scores.cols(); ++c)
            if (scores(r, c) > scores(r, best)) best = static_cast<int>(c);
        labels[static_cast<size_t>(r)] = best;
    }
    return labels;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accuracy: size mismatch");
    if (predicted.empty()) return 0.0;
    size_t correct = 0;
    for (size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

} // namespace randlink
