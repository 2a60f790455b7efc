#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sflab/dense.hpp"
#include "sflab/monomial.hpp"

namespace sflab {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol = 1e-9;

/// Orthonormal basis of the numerical nullspace of a rectangular map
/// (singular values below tol * largest).
inline std::vector<Eigen::VectorXcd> kernel_basis(const Mat& m, double tol = kDefaultTol) {
    if (!m.allFinite()) throw std::invalid_argument("kernel_basis: non-finite entries");
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * tol;
    std::vector<Eigen::VectorXcd> out;
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        const double s = i < sv.size() ? sv(i) : 0.0;
        if (s <= cutoff) out.push_back(svd.matrixV().col(i));
    }
    return out;
}

inline Eigen::Index numeric_rank(const Mat& m, double tol = kDefaultTol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double cutoff = sv(0) * tol;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

/// Rank of the Gram matrix of a family under <x,y> = tau(y* x).
inline Eigen::Index gram_rank(const std::vector<Mat>& xs, double tol = kDefaultTol,
                              std::int64_t capacity = 1 << 16) {
    if (xs.empty()) return 0;
    const auto k = static_cast<std::int64_t>(xs.size());
    if (k * k > capacity)
        throw CapacityError("gram_rank: Gram matrix exceeds capacity");
    Mat g(k, k);
    for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t j = 0; j < k; ++j)
            g(i, j) = trace_inner(xs[j], xs[i]);
    return numeric_rank(g, tol);
}

/// Exact-leaning span dimension of a monomial family: monomials with distinct
/// permutation supports are trace-orthogonal, so the rank splits into small
/// per-support Gram ranks over the phase vectors. Scales to towers where a
/// dense Gram would not.
inline std::int64_t mono_gram_rank(const std::vector<MonomialMatrix>& xs,
                                   double tol = kDefaultTol) {
    std::map<std::vector<std::int32_t>, std::vector<const MonomialMatrix*>> groups;
    for (const auto& x : xs) {
        if (x.is_zero()) continue;
        groups[x.perm_key()].push_back(&x);
    }
    std::int64_t rank = 0;
    for (const auto& [key, members] : groups) {
        std::vector<std::int64_t> support;
        for (std::size_t j = 0; j < key.size(); ++j)
            if (key[j] >= 0) support.push_back(static_cast<std::int64_t>(j));
        const auto g = static_cast<Eigen::Index>(members.size());
        if (g == 1) {
            ++rank;
            continue;
        }
        Mat phases(static_cast<Eigen::Index>(support.size()), g);
        for (Eigen::Index t = 0; t < g; ++t)
            for (std::size_t s = 0; s < support.size(); ++s)
                phases(static_cast<Eigen::Index>(s), t) = members[t]->phase_of(support[s]).value();
        rank += numeric_rank(phases, tol);
    }
    return rank;
}

/// Modified Gram-Schmidt with one re-orthogonalization pass; drops vectors
/// whose residual is below tol relative to their original size.
inline std::vector<Mat> orthonormalize(const std::vector<Mat>& xs, double tol = kDefaultTol) {
    std::vector<Mat> basis;
    for (const auto& x0 : xs) {
        const double scale = two_norm(x0);
        if (scale <= tol) continue;
        Mat x = x0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) x -= trace_inner(x, b) * b;
        const double r = two_norm(x);
        if (r > tol * scale) basis.push_back(x / r);
    }
    return basis;
}

/// Projection of x onto the span of an orthonormal family.
inline Mat project_span(const Mat& x, const std::vector<Mat>& onb) {
    Mat out = Mat::Zero(x.rows(), x.cols());
    for (const auto& b : onb) out += trace_inner(x, b) * b;
    return out;
}

inline double distance_to_span(const Mat& x, const std::vector<Mat>& onb) {
    return two_norm(x - project_span(x, onb));
}

/// Orthonormal basis of span(A) ∩ span(B) via the kernel of [A | -B] on
/// vectorized matrices.
inline std::vector<Mat> span_intersection(const std::vector<Mat>& a, const std::vector<Mat>& b,
                                          double tol = kDefaultTol) {
    if (a.empty() || b.empty()) return {};
    const Eigen::Index n2 = a[0].size();
    Mat stacked(n2, static_cast<Eigen::Index>(a.size() + b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        stacked.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXcd>(a[i].data(), n2);
    for (std::size_t i = 0; i < b.size(); ++i)
        stacked.col(static_cast<Eigen::Index>(a.size() + i)) =
            -Eigen::Map<const Eigen::VectorXcd>(b[i].data(), n2);
    std::vector<Mat> raw;
    for (const auto& v : kernel_basis(stacked, tol)) {
        Mat x = Mat::Zero(a[0].rows(), a[0].cols());
        for (std::size_t i = 0; i < a.size(); ++i) x += v(static_cast<Eigen::Index>(i)) * a[i];
        raw.push_back(x);
    }
    return orthonormalize(raw, tol);
}

}  // namespace sflab
