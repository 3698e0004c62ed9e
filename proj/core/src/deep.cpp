#include "randlink/deep.hpp"

#include "randlink/errors.hpp"

namespace randlink {

std::vector<DenseMatrix> forward_stack(const DenseMatrix& X,
                                       const std::vector<HiddenLayerParams>& layers) {
    std::vector<DenseMatrix> hidden;
    hidden.reserve(layers.size());
    const DenseMatrix* input = &X;
    for (const auto& layer : layers) {
        hidden.push_back(hidden_output(*input, layer));
        input = &hidden.back();
    }
    return hidden;
}

static std::vector<const DenseMatrix*> block_pointers(const std::vector<DenseMatrix>& ms) {
    std::vector<const DenseMatrix*> ptrs;
    ptrs.reserve(ms.size());
    for (const auto& m : ms) ptrs.push_back(&m);
    return ptrs;
}

static DeepModel finish_deep(const Dataset& ds, const NetworkConfig& cfg,
                             std::vector<HiddenLayerParams> layers) {
    DeepModel model;
    model.config = cfg;
    model.class_count = ds.class_count;
    model.class_names = ds.class_names;
    std::vector<DenseMatrix> hidden = forward_stack(ds.features, layers);
    model.layers = std::move(layers);
    DenseMatrix D =
        assemble_design(block_pointers(hidden), ds.features, cfg.direct_links, cfg.bias_in_output);
    DenseMatrix Y = one_hot(ds.labels, ds.class_count);
    model.beta = solve_output_weights(D, Y, cfg.lambda);
    return model;
}

DeepModel train_drvfl(const Dataset& ds, const NetworkConfig& cfg) {
    validate_config(cfg);
    if (ds.rows() == 0) throw std::invalid_argument("train_drvfl: empty dataset");
    Rng rng(cfg.seed);
    std::vector<HiddenLayerParams> layers;
    layers.reserve(static_cast<size_t>(cfg.layers));
    int width = static_cast<int>(ds.cols());
    for (int l = 0; l < cfg.layers; ++l) {
        layers.push_back(random_layer_from(rng, width, cfg.hidden_nodes, cfg));
        width = cfg.hidden_nodes;
    }
    return finish_deep(ds, cfg, std::move(layers));
}

DeepModel train_dsp_rvfl(const Dataset& ds, const NetworkConfig& cfg, const FistaConfig& fcfg) {
    validate_config(cfg);
    if (ds.rows() == 0) throw std::invalid_argument("train_dsp_rvfl: empty dataset");
    Rng rng(cfg.seed);
    std::vector<HiddenLayerParams> layers;
    layers.reserve(static_cast<size_t>(cfg.layers));
    DenseMatrix input = ds.features;
    for (int l = 0; l < cfg.layers; ++l) {
        // Each layer reconstructs its own input through the sparse autoencoder.
        layers.push_back(sparse_pretrain_layer(input, cfg.hidden_nodes, rng, cfg, fcfg));
        input = hidden_output(input, layers.back());
    }
    return finish_deep(ds, cfg, std::move(layers));
}

PredictResult predict_deep(const DeepModel& model, const DenseMatrix& X) {
    DenseMatrix Xn = apply_normalization(X, model.norm);
    if (model.layers.empty()) throw std::invalid_argument("predict_deep: model has no layers");
    if (Xn.cols() != model.layers.front().input_width())
        throw std::invalid_argument("predict_deep: feature width mismatch");
    std::vector<DenseMatrix> hidden = forward_stack(Xn, model.layers);
    DenseMatrix D = assemble_design(block_pointers(hidden), Xn, model.config.direct_links,
                                    model.config.bias_in_output);
    PredictResult out;
    out.scores = D * model.beta;
    out.labels = argmax_rows(out.scores);
    return out;
}

} // namespace randlink
