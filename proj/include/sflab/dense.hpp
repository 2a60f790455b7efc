#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "sflab/monomial.hpp"

namespace sflab {

/// Normalized trace tau(x) = Tr(x)/N.
inline Cplx normalized_trace(const Mat& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("normalized_trace: square input required");
    return x.trace() / static_cast<double>(x.rows());
}

inline Cplx normalized_trace(const MonomialMatrix& x) { return x.trace(); }
inline Cplx normalized_trace(const MonomialSum& x) { return x.trace(); }

/// Trace inner product <x, y> = tau(y* x).
inline Cplx trace_inner(const Mat& x, const Mat& y) {
    return (y.conjugate().cwiseProduct(x)).sum() / static_cast<double>(x.rows());
}

/// ||x||_{2,tau} = sqrt(tau(x* x)).
inline double two_norm(const Mat& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("two_norm: square input required");
    return std::sqrt(x.squaredNorm() / static_cast<double>(x.rows()));
}

inline Mat dense_tensor(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat dense_direct_sum(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

inline bool approx_equal(const Mat& a, const Mat& b, double tol = 1e-9) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

inline double residual(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace sflab
