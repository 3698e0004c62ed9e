#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <string>

#include "randlink/errors.hpp"

namespace randlink {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline bool is_finite(const DenseMatrix& m) {
    return m.allFinite();
}

inline void require_finite(const DenseMatrix& m, const std::string& what) {
    if (!m.allFinite())
        throw numeric_error(what + " contains non-finite values");
}

/// Column-wise concatenation; all blocks must share the row count.
inline DenseMatrix hstack(std::initializer_list<const DenseMatrix*> blocks) {
    Eigen::Index rows = -1, cols = 0;
    for (const DenseMatrix* b : blocks) {
        if (b->size() == 0) continue;
        if (rows < 0) rows = b->rows();
        else if (b->rows() != rows) throw std::invalid_argument("hstack: mismatched row counts");
        cols += b->cols();
    }
    if (rows < 0) rows = 0;
    DenseMatrix out(rows, cols);
    Eigen::Index at = 0;
    for (const DenseMatrix* b : blocks) {
        if (b->size() == 0) continue;
        out.middleCols(at, b->cols()) = *b;
        at += b->cols();
    }
    return out;
}

} // namespace randlink
