#include "randlink/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "randlink/errors.hpp"
#include "randlink/rng.hpp"

namespace randlink {

RidgeMode parse_ridge_mode(std::string_view name) {
    if (name == "auto") return RidgeMode::Auto;
    if (name == "primal") return RidgeMode::Primal;
    if (name == "dual") return RidgeMode::Dual;
    if (name == "pseudoinverse" || name == "pinv") return RidgeMode::Pseudoinverse;
    throw usage_error("unknown ridge mode: " + std::string(name));
}

std::string_view ridge_mode_name(RidgeMode m) {
    switch (m) {
    case RidgeMode::Auto: return "auto";
    case RidgeMode::Primal: return "primal";
    case RidgeMode::Dual: return "dual";
    case RidgeMode::Pseudoinverse: return "pseudoinverse";
    }
    return "auto";
}

static void check_solve_inputs(const DenseMatrix& D, const DenseMatrix& Y) {
    if (D.rows() != Y.rows())
        throw std::invalid_argument("ridge_solve: D and Y row counts differ");
    if (D.rows() == 0 || D.cols() == 0)
        throw std::invalid_argument("ridge_solve: empty design matrix");
    require_finite(D, "design matrix");
    require_finite(Y, "target matrix");
}

DenseMatrix ridge_solve(const DenseMatrix& D, const DenseMatrix& Y, double lambda, RidgeMode mode) {
    check_solve_inputs(D, Y);
    if (mode == RidgeMode::Pseudoinverse) return pinv_solve(D, Y);
    if (!(lambda > 0.0))
        throw std::invalid_argument("ridge_solve: lambda must be > 0 (use Pseudoinverse for lambda == 0)");
    if (!std::isfinite(lambda))
        throw numeric_error("ridge_solve: lambda is not finite");

    if (mode == RidgeMode::Auto)
        mode = D.cols() <= D.rows() ? RidgeMode::Primal : RidgeMode::Dual;

    DenseMatrix beta;
    if (mode == RidgeMode::Primal) {
        DenseMatrix gram = D.transpose() * D;
        gram.diagonal().array() += lambda;
        Eigen::LLT<DenseMatrix> llt(gram);
        if (llt.info() != Eigen::Success)
            throw numeric_error("ridge_solve: primal system is not positive definite");
        beta = llt.solve(D.transpose() * Y);
    } else {
        DenseMatrix gram = D * D.transpose();
        gram.diagonal().array() += lambda;
        Eigen::LLT<DenseMatrix> llt(gram);
        if (llt.info() != Eigen::Success)
            throw numeric_error("ridge_solve: dual system is not positive definite");
        beta = D.transpose() * llt.solve(Y);
    }
    require_finite(beta, "ridge solution");
    return beta;
}

DenseMatrix pinv_solve(const DenseMatrix& D, const DenseMatrix& Y) {
    check_solve_inputs(D, Y);
    Eigen::BDCSVD<DenseMatrix> svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV);
    // Eigen's threshold is relative to sigma_max, so this is
    // max(rows, cols) * sigma_max * 1e-12 in absolute terms.
    svd.setThreshold(static_cast<double>(std::max(D.rows(), D.cols())) * 1e-12);
    DenseMatrix beta = svd.solve(Y);
    require_finite(beta, "pseudoinverse solution");
    return beta;
}

double spectral_norm_estimate(const DenseMatrix& A, int iterations) {
    if (A.size() == 0) return 0.0;
    require_finite(A, "spectral norm input");
    Rng rng(0x726c6e6bULL);
    Vector v(A.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform_in(rng, -1.0, 1.0);
    double norm = v.norm();
    if (norm == 0.0) v.setOnes(); else v /= norm;
    double sigma2 = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector w = A.transpose() * (A * v);
        double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        sigma2 = v.dot(A.transpose() * (A * v));
    }
    return std::sqrt(std::max(sigma2, 0.0));
}

} // namespace randlink
