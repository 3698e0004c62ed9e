#pragma once

#include <optional>
#include <vector>

#include "randlink/shallow.hpp"

namespace randlink {

struct FistaConfig {
    double l1_weight = 1.0;
    int max_iterations = 500;
    double tolerance = 1e-6;
    std::optional<double> step_size; // absent: 1 / (2 sigma_max(A)^2)
};

struct SparsePretrainResult {
    DenseMatrix varpi; // N x d autoencoder output weights
    Vector b_hat;      // row means of varpi
    std::vector<double> objective_trace;
    int iterations = 0;
};

double l1_objective(const DenseMatrix& A, const DenseMatrix& B, const DenseMatrix& W,
                    double l1_weight);

/// Accelerated proximal gradient for ||A w - B||^2 + l1_weight ||w||_1.
SparsePretrainResult fista_l1(const DenseMatrix& A, const DenseMatrix& B,
                              const FistaConfig& cfg);

Vector sp_biases(const DenseMatrix& varpi);

/// H = g(X varpi^T + b_hat), the pretrained hidden map.
DenseMatrix sp_hidden(const DenseMatrix& X, const DenseMatrix& varpi, const Vector& b_hat,
                      Activation activation);

/// Pretrains one layer on `input`: random intermediate features from rng,
/// FISTA reconstruction of the input, transposed weights plus row-mean
/// biases become the layer parameters.
HiddenLayerParams sparse_pretrain_layer(const DenseMatrix& input, int n_nodes, Rng& rng,
                                        const NetworkConfig& cfg, const FistaConfig& fcfg);

ShallowModel train_sp_rvfl(const Dataset& ds, const NetworkConfig& cfg, const FistaConfig& fcfg);

} // namespace randlink
