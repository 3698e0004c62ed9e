#include "randlink/sparse_pretrain.hpp"

#include <cmath>

#include "randlink/errors.hpp"
#include "randlink/linalg.hpp"

namespace randlink {

double l1_objective(const DenseMatrix& A, const DenseMatrix& B, const DenseMatrix& W,
                    double l1_weight) {
    return (A * W - B).squaredNorm() + l1_weight * W.cwiseAbs().sum();
}

static DenseMatrix soft_threshold(const DenseMatrix& Z, double t) {
    return Z.unaryExpr([t](double z) {
        if (z > t) return z - t;
        if (z < -t) return z + t;
        return 0.0;
    });
}

SparsePretrainResult fista_l1(const DenseMatrix& A, const DenseMatrix& B, const FistaConfig& cfg) {
    if (A.rows() != B.rows())
        throw std::invalid_argument("fista_l1: A and B row counts differ");
    require_finite(A, "fista_l1 operator");
    require_finite(B, "fista_l1 target");
    if (cfg.l1_weight < 0.0) throw std::invalid_argument("fista_l1: l1_weight must be >= 0");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("fista_l1: tolerance must be > 0");
    if (cfg.max_iterations < 1) throw std::invalid_argument("fista_l1: max_iterations must be >= 1");

    double step;
    if (cfg.step_size) {
        step = *cfg.step_size;
        if (!(step > 0.0)) throw numeric_error("fista_l1: step size must be positive");
    } else {
        double sigma = spectral_norm_estimate(A);
        if (sigma <= 0.0) throw numeric_error("fista_l1: operator has zero spectral norm");
        step = 1.0 / (2.0 * sigma * sigma);
    }

    SparsePretrainResult res;
    DenseMatrix x = DenseMatrix::Zero(A.cols(), B.cols());
    DenseMatrix y = x;
    double t = 1.0;
    double shrink = cfg.l1_weight * step / 2.0;

    res.objective_trace.push_back(l1_objective(A, B, x, cfg.l1_weight));
    for (int k = 0; k < cfg.max_iterations; ++k) {
        DenseMatrix grad_half = A.transpose() * (A * y - B);
        DenseMatrix x_next = soft_threshold(y - step * grad_half, shrink);
        double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        y = x_next + ((t - 1.0) / t_next) * (x_next - x);
        double delta = (x_next - x).cwiseAbs().maxCoeff();
        x.swap(x_next);
        t = t_next;
        res.iterations = k + 1;
        res.objective_trace.push_back(l1_objective(A, B, x, cfg.l1_weight));
        if (delta < cfg.tolerance) break;
    }
    require_finite(x, "fista_l1 iterate");
    res.varpi = std::move(x);
    res.b_hat = sp_biases(res.varpi);
    return res;
}

Vector sp_biases(const DenseMatrix& varpi) {
    if (varpi.cols() < 1) throw std::invalid_argument("sp_biases: varpi needs at least one column");
    return varpi.rowwise().mean();
}

DenseMatrix sp_hidden(const DenseMatrix& X, const DenseMatrix& varpi, const Vector& b_hat,
                      Activation activation) {
    if (X.cols() != varpi.cols())
        throw std::invalid_argument("sp_hidden: X columns must match varpi columns");
    if (b_hat.size() != varpi.rows())
        throw std::invalid_argument("sp_hidden: b_hat length must match varpi rows");
    DenseMatrix pre = X * varpi.transpose();
    pre.rowwise() += b_hat.transpose();
    return apply_activation(pre, activation);
}

HiddenLayerParams sparse_pretrain_layer(const DenseMatrix& input, int n_nodes, Rng& rng,
                                        const NetworkConfig& cfg, const FistaConfig& fcfg) {
    HiddenLayerParams random_part =
        random_layer_from(rng, static_cast<int>(input.cols()), n_nodes, cfg);
    DenseMatrix h_tilde = hidden_output(input, random_part);
    SparsePretrainResult sp = fista_l1(h_tilde, input, fcfg);
    HiddenLayerParams layer;
    layer.activation = cfg.activation;
    layer.weights = sp.varpi.transpose(); // d_in x N
    layer.biases = sp.b_hat;
    return layer;
}

ShallowModel train_sp_rvfl(const Dataset& ds, const NetworkConfig& cfg, const FistaConfig& fcfg) {
    validate_config(cfg);
    if (cfg.layers != 1) throw std::invalid_argument("train_sp_rvfl: layers must be 1");
    if (ds.rows() == 0) throw std::invalid_argument("train_sp_rvfl: empty dataset");
    Rng rng(cfg.seed);
    HiddenLayerParams layer =
        sparse_pretrain_layer(ds.features, cfg.hidden_nodes, rng, cfg, fcfg);
    return train_shallow_with_layer(ds, cfg, std::move(layer));
}

} // namespace randlink
