#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sflab/phase.hpp"

namespace sflab {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Partial generalized-permutation matrix: at most one nonzero entry per row
/// and per column, each an exact root of unity. Column j maps to row rows[j]
/// with phase phases[j]; rows[j] == -1 marks a zero column.
class MonomialMatrix {
public:
    MonomialMatrix() = default;

    explicit MonomialMatrix(std::int64_t n)
        : n_(n), rows_(static_cast<std::size_t>(n), -1),
          phases_(static_cast<std::size_t>(n)) {
        if (n <= 0) throw std::invalid_argument("MonomialMatrix: dim must be positive");
    }

    static MonomialMatrix identity(std::int64_t n) {
        MonomialMatrix m(n);
        for (std::int64_t j = 0; j < n; ++j) m.rows_[j] = static_cast<std::int32_t>(j);
        return m;
    }

    static MonomialMatrix zero(std::int64_t n) { return MonomialMatrix(n); }

    /// Diagonal monomial from per-coordinate phases.
    static MonomialMatrix diagonal(const std::vector<Phase>& d) {
        MonomialMatrix m(static_cast<std::int64_t>(d.size()));
        for (std::size_t j = 0; j < d.size(); ++j) {
            m.rows_[j] = static_cast<std::int32_t>(j);
            m.phases_[j] = d[j];
        }
        return m;
    }

    std::int64_t dim() const { return n_; }

    void set(std::int64_t row, std::int64_t col, Phase ph) {
        rows_[col] = static_cast<std::int32_t>(row);
        phases_[col] = ph;
    }

    bool column_zero(std::int64_t col) const { return rows_[col] < 0; }
    std::int64_t row_of(std::int64_t col) const { return rows_[col]; }
    const Phase& phase_of(std::int64_t col) const { return phases_[col]; }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](std::int32_t r) { return r < 0; });
    }

    bool is_identity() const {
        for (std::int64_t j = 0; j < n_; ++j)
            if (rows_[j] != j || !phases_[j].is_one()) return false;
        return true;
    }

    /// Unitary iff every column (hence every row) carries an entry.
    bool is_unitary() const {
        return std::none_of(rows_.begin(), rows_.end(), [](std::int32_t r) { return r < 0; });
    }

    friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
        if (a.n_ != b.n_) return false;
        for (std::int64_t j = 0; j < a.n_; ++j) {
            if (a.rows_[j] != b.rows_[j]) return false;
            if (a.rows_[j] >= 0 && a.phases_[j] != b.phases_[j]) return false;
        }
        return true;
    }
    friend bool operator!=(const MonomialMatrix& a, const MonomialMatrix& b) { return !(a == b); }

    MonomialMatrix scaled(const Phase& s) const {
        MonomialMatrix out = *this;
        for (std::int64_t j = 0; j < n_; ++j)
            if (out.rows_[j] >= 0) out.phases_[j] = out.phases_[j] * s;
        return out;
    }

    MonomialMatrix adjoint() const {
        MonomialMatrix out(n_);
        for (std::int64_t j = 0; j < n_; ++j) {
            if (rows_[j] < 0) continue;
            out.rows_[rows_[j]] = static_cast<std::int32_t>(j);
            out.phases_[rows_[j]] = phases_[j].conj();
        }
        return out;
    }

    Mat dense() const {
        Mat m = Mat::Zero(n_, n_);
        for (std::int64_t j = 0; j < n_; ++j)
            if (rows_[j] >= 0) m(rows_[j], j) = phases_[j].value();
        return m;
    }

    /// Normalized trace: (1/N) * sum of phases at fixed points.
    Cplx trace() const {
        Cplx acc{0.0, 0.0};
        for (std::int64_t j = 0; j < n_; ++j)
            if (rows_[j] == j) acc += phases_[j].value();
        return acc / static_cast<double>(n_);
    }

    /// The permutation key ignores phases; monomials with different keys are
    /// trace-orthogonal.
    const std::vector<std::int32_t>& perm_key() const { return rows_; }

private:
    std::int64_t n_ = 0;
    std::vector<std::int32_t> rows_;
    std::vector<Phase> phases_;
};

inline MonomialMatrix mono_mul(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("mono_mul: dimension mismatch");
    MonomialMatrix out(a.dim());
    for (std::int64_t j = 0; j < b.dim(); ++j) {
        if (b.column_zero(j)) continue;
        const std::int64_t mid = b.row_of(j);
        if (a.column_zero(mid)) continue;
        out.set(a.row_of(mid), j, a.phase_of(mid) * b.phase_of(j));
    }
    return out;
}

inline MonomialMatrix mono_tensor(const MonomialMatrix& a, const MonomialMatrix& b) {
    MonomialMatrix out(a.dim() * b.dim());
    const std::int64_t nb = b.dim();
    for (std::int64_t ja = 0; ja < a.dim(); ++ja) {
        if (a.column_zero(ja)) continue;
        for (std::int64_t jb = 0; jb < nb; ++jb) {
            if (b.column_zero(jb)) continue;
            out.set(a.row_of(ja) * nb + b.row_of(jb), ja * nb + jb,
                    a.phase_of(ja) * b.phase_of(jb));
        }
    }
    return out;
}

inline MonomialMatrix mono_pow(const MonomialMatrix& a, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("mono_pow: negative power");
    MonomialMatrix acc = MonomialMatrix::identity(a.dim());
    MonomialMatrix base = a;
    while (k > 0) {
        if (k & 1) acc = mono_mul(acc, base);
        base = mono_mul(base, base);
        k >>= 1;
    }
    return acc;
}

/// a + b for monomials with disjoint row and column supports (block sums);
/// anything else is not monomial and throws.
inline MonomialMatrix mono_block_sum(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("mono_block_sum: dimension mismatch");
    MonomialMatrix out = a;
    for (std::int64_t j = 0; j < b.dim(); ++j) {
        if (b.column_zero(j)) continue;
        if (!out.column_zero(j))
            throw std::invalid_argument("mono_block_sum: overlapping column support");
        out.set(b.row_of(j), j, b.phase_of(j));
    }
    return out;
}

/// Embed g into M_{left*dim*right} as 1_left (x) g (x) 1_right.
inline MonomialMatrix mono_embed(const MonomialMatrix& g, std::int64_t left, std::int64_t right) {
    MonomialMatrix out = g;
    if (left > 1) out = mono_tensor(MonomialMatrix::identity(left), out);
    if (right > 1) out = mono_tensor(out, MonomialMatrix::identity(right));
    return out;
}

/// Finite linear combination of monomials of one dimension. Canonical form
/// merges coefficients of identical monomials.
class MonomialSum {
public:
    MonomialSum() = default;
    explicit MonomialSum(std::int64_t n) : n_(n) {}
    MonomialSum(Cplx c, const MonomialMatrix& m) : n_(m.dim()) { add(c, m); }

    std::int64_t dim() const { return n_; }
    const std::vector<std::pair<Cplx, MonomialMatrix>>& terms() const { return terms_; }

    void add(Cplx c, const MonomialMatrix& m) {
        if (n_ == 0) n_ = m.dim();
        if (m.dim() != n_) throw std::invalid_argument("MonomialSum: dimension mismatch");
        if (m.is_zero()) return;
        for (auto& [coef, mono] : terms_) {
            if (mono == m) {
                coef += c;
                return;
            }
        }
        terms_.emplace_back(c, m);
    }

    void add(const MonomialSum& other) {
        for (const auto& [c, m] : other.terms_) add(c, m);
    }

    MonomialSum scaled(Cplx s) const {
        MonomialSum out(n_);
        for (const auto& [c, m] : terms_) out.add(c * s, m);
        return out;
    }

    /// Drop terms with negligible coefficients.
    MonomialSum pruned(double tol = 1e-14) const {
        MonomialSum out(n_);
        for (const auto& [c, m] : terms_)
            if (std::abs(c) > tol) out.terms_.emplace_back(c, m);
        return out;
    }

    Cplx trace() const {
        Cplx acc{0.0, 0.0};
        for (const auto& [c, m] : terms_) acc += c * m.trace();
        return acc;
    }

    Mat dense() const {
        Mat out = Mat::Zero(n_, n_);
        for (const auto& [c, m] : terms_) out += c * m.dense();
        return out;
    }

private:
    std::int64_t n_ = 0;
    std::vector<std::pair<Cplx, MonomialMatrix>> terms_;
};

}  // namespace sflab
