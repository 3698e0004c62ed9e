#pragma once

#include <string_view>

#include "randlink/matrix.hpp"

namespace randlink {

enum class Activation { Sigmoid, Tanh, Relu, Identity };

Activation parse_activation(std::string_view name);
std::string_view activation_name(Activation a);

double apply_activation(double x, Activation a);
DenseMatrix apply_activation(const DenseMatrix& m, Activation a);

/// Elementwise logistic 1/(1+exp(-x)), overflow-safe at |x| large.
DenseMatrix sigmoid(const DenseMatrix& m);

} // namespace randlink
