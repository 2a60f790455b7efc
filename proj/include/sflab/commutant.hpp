#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sflab/dense.hpp"
#include "sflab/numerics.hpp"
#include "sflab/report.hpp"

namespace sflab {

/// Trace-orthonormal basis of a *-subalgebra.
struct SubalgebraBasis {
    std::int64_t ambient_dim = 0;
    std::vector<Mat> basis;  // orthonormal under <x,y> = tau(y* x)
    bool contains_identity = false;

    std::int64_t dim() const { return static_cast<std::int64_t>(basis.size()); }

    static SubalgebraBasis from_span(std::vector<Mat> span, double tol = kDefaultTol) {
        SubalgebraBasis out;
        if (span.empty()) return out;
        out.ambient_dim = span[0].rows();
        out.basis = orthonormalize(span, tol);
        const Mat id = Mat::Identity(out.ambient_dim, out.ambient_dim);
        out.contains_identity = distance_to_span(id, out.basis) <= tol;
        return out;
    }
};

/// Smallest unital *-subalgebra containing the generators, as an orthonormal
/// basis. Iterates span <- span + span*span until the dimension stabilizes.
inline SubalgebraBasis algebra_closure(const std::vector<Mat>& generators,
                                       double tol = kDefaultTol) {
    if (generators.empty()) throw std::invalid_argument("algebra_closure: no generators");
    const std::int64_t n = generators[0].rows();
    std::vector<Mat> span{Mat::Identity(n, n)};
    for (const auto& g : generators) {
        span.push_back(g);
        span.push_back(g.adjoint());
    }
    auto basis = orthonormalize(span, tol);
    const std::int64_t cap = n * n;
    const int max_iter = 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(cap)))) + 4;
    for (int iter = 0; iter < max_iter; ++iter) {
        const std::size_t before = basis.size();
        std::vector<Mat> products;
        for (const auto& x : basis)
            for (const auto& y : basis) products.push_back(x * y);
        for (const auto& p : products) {
            Mat x = p;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) x -= trace_inner(x, b) * b;
            const double r = two_norm(x);
            if (r > tol) basis.push_back(x / r);
        }
        if (basis.size() == before) {
            SubalgebraBasis out;
            out.ambient_dim = n;
            out.basis = std::move(basis);
            out.contains_identity = true;
            return out;
        }
        if (static_cast<std::int64_t>(basis.size()) > cap)
            throw CapacityError("algebra_closure: dimension exceeded ambient bound");
    }
    throw std::runtime_error("algebra_closure: did not stabilize within the iteration limit");
}

inline constexpr std::int64_t kDenseCommutantMaxDim = 32;

/// Commutant inside the full matrix algebra, via the kernel of the stacked
/// commutator map. Dense; intended for small ambient dimension.
inline SubalgebraBasis commutant(const SubalgebraBasis& sub, double tol = kDefaultTol) {
    const std::int64_t n = sub.ambient_dim;
    if (n > kDenseCommutantMaxDim)
        throw CapacityError("commutant: ambient dimension " + std::to_string(n) +
                            " beyond dense capacity; use the monomial route");
    const std::int64_t n2 = n * n;
    const Mat id = Mat::Identity(n, n);
    Mat stacked(static_cast<Eigen::Index>(sub.basis.size()) * n2, n2);
    for (std::size_t t = 0; t < sub.basis.size(); ++t) {
        // column-major vec: vec(gX - Xg) = (I (x) g - g^T (x) I) vec(X)
        stacked.middleRows(static_cast<Eigen::Index>(t) * n2, n2) =
            dense_tensor(id, sub.basis[t]) - dense_tensor(sub.basis[t].transpose(), id);
    }
    std::vector<Mat> out;
    for (const auto& v : kernel_basis(stacked, tol)) {
        Mat x(n, n);
        for (std::int64_t j = 0; j < n; ++j) x.col(j) = v.segment(j * n, n);
        out.push_back(x);
    }
    return SubalgebraBasis::from_span(out, tol);
}

/// commutant(sub) intersected with the span of `ambient`.
inline SubalgebraBasis relative_commutant(const SubalgebraBasis& sub,
                                          const SubalgebraBasis& ambient,
                                          double tol = kDefaultTol) {
    const auto comm = commutant(sub, tol);
    SubalgebraBasis out;
    out.ambient_dim = sub.ambient_dim;
    out.basis = span_intersection(comm.basis, ambient.basis, tol);
    const Mat id = Mat::Identity(out.ambient_dim, out.ambient_dim);
    out.contains_identity = distance_to_span(id, out.basis) <= tol;
    return out;
}

// ---------------------------------------------------------------------------
// Exact commutant of unitary monomial families (orbit method)
// ---------------------------------------------------------------------------

/// Commutant dimension of a family of unitary monomials inside M_N, computed
/// exactly: the constraints X = u X u* glue matrix entries along orbits of
/// index pairs with root-of-unity weights; inconsistent orbits are forced to
/// zero and each consistent orbit contributes one dimension. Scales to
/// tower-size N where the dense route cannot go.
class MonomialCommutant {
public:
    MonomialCommutant(const std::vector<MonomialMatrix>& gens, std::int64_t n) : n_(n) {
        parent_.resize(static_cast<std::size_t>(n * n));
        weight_.assign(static_cast<std::size_t>(n * n), Phase::one());
        dead_.assign(static_cast<std::size_t>(n * n), false);
        for (std::size_t t = 0; t < parent_.size(); ++t) parent_[t] = static_cast<std::int64_t>(t);
        for (const auto& u : gens) {
            if (!u.is_unitary())
                throw std::invalid_argument("MonomialCommutant: generators must be unitary");
            if (u.dim() != n)
                throw std::invalid_argument("MonomialCommutant: dimension mismatch");
            for (std::int64_t i = 0; i < n; ++i)
                for (std::int64_t j = 0; j < n; ++j) {
                    // X_{u(i), u(j)} = phi_i conj(phi_j) X_{i j}
                    const std::int64_t p = i * n + j;
                    const std::int64_t q = u.row_of(i) * n + u.row_of(j);
                    unite(p, q, u.phase_of(i) * u.phase_of(j).conj());
                }
        }
    }

    std::int64_t dim() const {
        std::int64_t count = 0;
        for (std::size_t t = 0; t < parent_.size(); ++t)
            if (find(static_cast<std::int64_t>(t)).first == static_cast<std::int64_t>(t) &&
                !dead_[t])
                ++count;
        return count;
    }

    /// Dense orbit basis (one matrix per consistent orbit); only sensible for
    /// small N.
    std::vector<Mat> basis() const {
        std::vector<std::vector<std::pair<std::int64_t, Phase>>> orbits(
            static_cast<std::size_t>(n_ * n_));
        for (std::int64_t p = 0; p < n_ * n_; ++p) {
            const auto [root, w] = find(p);
            if (!dead_[static_cast<std::size_t>(root)])
                orbits[static_cast<std::size_t>(root)].push_back({p, w});
        }
        std::vector<Mat> out;
        for (const auto& orbit : orbits) {
            if (orbit.empty()) continue;
            Mat x = Mat::Zero(n_, n_);
            for (const auto& [p, w] : orbit) x(p / n_, p % n_) = w.value();
            out.push_back(x);
        }
        return out;
    }

private:
    // find returns (root, w) with X_p = w * X_root; compresses paths.
    std::pair<std::int64_t, Phase> find(std::int64_t p) const {
        std::vector<std::int64_t> path;
        while (parent_[static_cast<std::size_t>(p)] != p) {
            path.push_back(p);
            p = parent_[static_cast<std::size_t>(p)];
        }
        Phase w = Phase::one();
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            w = weight_[static_cast<std::size_t>(*it)] * w;
            weight_[static_cast<std::size_t>(*it)] = w;
            parent_[static_cast<std::size_t>(*it)] = p;
        }
        return {p, w};
    }

    void unite(std::int64_t p, std::int64_t q, Phase omega) {
        // constraint: X_q = omega * X_p
        auto [rp, wp] = find(p);
        auto [rq, wq] = find(q);
        if (rp == rq) {
            if (!((omega * wp) == wq)) dead_[static_cast<std::size_t>(rp)] = true;
            return;
        }
        // X_rq = conj(wq) * omega * wp * X_rp
        parent_[static_cast<std::size_t>(rq)] = rp;
        weight_[static_cast<std::size_t>(rq)] = wq.conj() * omega * wp;
        if (dead_[static_cast<std::size_t>(rq)]) dead_[static_cast<std::size_t>(rp)] = true;
    }

    std::int64_t n_;
    mutable std::vector<std::int64_t> parent_;
    mutable std::vector<Phase> weight_;
    std::vector<bool> dead_;
};

// ---------------------------------------------------------------------------
// Expectations
// ---------------------------------------------------------------------------

/// Trace-orthogonal projection onto span(sub); trace-preserving and
/// bimodular when sub is a unital *-subalgebra.
inline Mat conditional_expectation(const Mat& x, const SubalgebraBasis& sub) {
    if (!sub.contains_identity)
        throw std::invalid_argument("conditional_expectation: subalgebra must contain 1");
    return project_span(x, sub.basis);
}

/// (1/m) sum_j u^j x u^{-j}; requires u^m = 1 exactly.
inline Mat averaging_expectation(const Mat& x, const MonomialMatrix& u, std::int64_t m) {
    if (!mono_pow(u, m).is_identity())
        throw std::invalid_argument("averaging_expectation: u^m != 1");
    Mat acc = Mat::Zero(x.rows(), x.cols());
    MonomialMatrix up = MonomialMatrix::identity(u.dim());
    for (std::int64_t t = 0; t < m; ++t) {
        const Mat ud = up.dense();
        acc += ud * x * ud.adjoint();
        up = mono_mul(up, u);
    }
    return acc / static_cast<double>(m);
}

/// Reports ||E_sub(y)|| and the distance of E_sub(y* y) to the scalars.
inline CheckReport orthogonality_check(const Mat& y, const SubalgebraBasis& sub,
                                       double tol = kDefaultTol) {
    CheckReport rep;
    const Mat ey = project_span(y, sub.basis);
    const double norm_ey = two_norm(ey);
    rep.check(norm_ey <= tol, "E(y) = 0", "orthogonality.expectation-vanishes", norm_ey);
    const Mat yy = y.adjoint() * y;
    const Mat eyy = project_span(yy, sub.basis);
    const Mat id = Mat::Identity(y.rows(), y.cols());
    const double dist = two_norm(eyy - normalized_trace(yy) * id);
    rep.check(dist <= tol, "E(y* y) scalar", "orthogonality.square-scalar", dist);
    return rep;
}

}  // namespace sflab
