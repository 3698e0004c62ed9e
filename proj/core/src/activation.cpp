#include "randlink/activation.hpp"

#include <cmath>
#include <string>

#include "randlink/errors.hpp"

namespace randlink {

Activation parse_activation(std::string_view name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    if (name == "identity") return Activation::Identity;
    throw usage_error("unknown activation: " + std::string(name));
}

std::string_view activation_name(Activation a) {
    switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::Identity: return "identity";
    }
    return "sigmoid";
}

static double sigmoid_scalar(double x) {
    // Split on sign so exp() never overflows.
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double apply_activation(double x, Activation a) {
    switch (a) {
    case Activation::Sigmoid: return sigmoid_scalar(x);
    case Activation::Tanh: return std::tanh(x);
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Identity: return x;
    }
    return x;
}

DenseMatrix apply_activation(const DenseMatrix& m, Activation a) {
    switch (a) {
    case Activation::Sigmoid: return m.unaryExpr(&sigmoid_scalar);
    case Activation::Tanh: return m.array().tanh().matrix();
    case Activation::Relu: return m.cwiseMax(0.0);
    case Activation::Identity: return m;
    }
    return m;
}

DenseMatrix sigmoid(const DenseMatrix& m) {
    return apply_activation(m, Activation::Sigmoid);
}

} // namespace randlink
