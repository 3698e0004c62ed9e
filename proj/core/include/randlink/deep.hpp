#pragma once

#include <vector>

#include "randlink/sparse_pretrain.hpp"

namespace randlink {

struct DeepModel {
    std::vector<HiddenLayerParams> layers;
    DenseMatrix beta; // single solve over all concatenated hidden blocks
    NetworkConfig config;
    NormalizationParams norm;
    int class_count = 0;
    std::vector<std::string> class_names;
};

/// Plain stacked recursion: H1 = g(X W1 + b1), Hl = g(H(l-1) Wl + bl).
/// Layer l > 1 sees only the previous hidden output.
std::vector<DenseMatrix> forward_stack(const DenseMatrix& X,
                                       const std::vector<HiddenLayerParams>& layers);

DeepModel train_drvfl(const Dataset& ds, const NetworkConfig& cfg);
DeepModel train_dsp_rvfl(const Dataset& ds, const NetworkConfig& cfg, const FistaConfig& fcfg);

PredictResult predict_deep(const DeepModel& model, const DenseMatrix& X);

} // namespace randlink
