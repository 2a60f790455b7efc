#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sflab/algebra_spec.hpp"
#include "sflab/monomial.hpp"
#include "sflab/numerics.hpp"
#include "sflab/report.hpp"

namespace sflab {

/// Diagonal unitary diag(1, g, g^2, ..., g^{m-1}) with g = exp(2*pi*i/m).
inline MonomialMatrix clock(std::int64_t m) {
    std::vector<Phase> d;
    d.reserve(static_cast<std::size_t>(m));
    for (std::int64_t t = 0; t < m; ++t) d.push_back(Phase::root(t, m));
    return MonomialMatrix::diagonal(d);
}

/// Cyclic permutation e_x -> e_{x+1 mod m}; clock(m)*shift(m) = g*shift(m)*clock(m).
inline MonomialMatrix shift(std::int64_t m) {
    MonomialMatrix q(m);
    for (std::int64_t x = 0; x < m; ++x) q.set((x + 1) % m, x, Phase::one());
    return q;
}

/// The base-level objects inside M_d: per summand the a-side pair (p_i, q_i)
/// and the multiplicity-side pair (pm_i, qm_i), plus the cycle v, the support
/// projection s, the partial isometry r = s v s, and the central unitary w.
///
/// Coordinates: global index = block_offset(i) + a_coord * d_i + m_coord.
struct BaseAlgebra {
    DerivedDims dims;
    std::vector<MonomialMatrix> p, q;    // clock/shift on the a-coordinate
    std::vector<MonomialMatrix> pm, qm;  // clock/shift on the multiplicity coordinate
    MonomialMatrix v, s, r, w;

    /// 1 - 1_{block i}: the diagonal padding that extends a block unitary by
    /// the identity off its block.
    MonomialMatrix pad(std::int64_t i) const {
        MonomialMatrix out(dims.d);
        const std::int64_t lo = dims.block_offset[i];
        const std::int64_t hi = lo + dims.block_size[i];
        for (std::int64_t t = 0; t < dims.d; ++t)
            if (t < lo || t >= hi) out.set(t, t, Phase::one());
        return out;
    }

    MonomialMatrix qm_padded(std::int64_t i) const { return mono_block_sum(qm[i], pad(i)); }
    MonomialMatrix pm_padded(std::int64_t i) const { return mono_block_sum(pm[i], pad(i)); }

    /// Block-diagonal unitary sum over summands of the padless block shifts
    /// (resp. clocks); the one-slot averaging unitaries.
    MonomialMatrix block_shift_sum() const {
        MonomialMatrix u = qm[0];
        for (std::size_t i = 1; i < qm.size(); ++i) u = mono_block_sum(u, qm[i]);
        return u;
    }
    MonomialMatrix block_clock_sum() const {
        MonomialMatrix u = pm[0];
        for (std::size_t i = 1; i < pm.size(); ++i) u = mono_block_sum(u, pm[i]);
        return u;
    }

    /// Monomial basis of B: per block all p^al q^be pm^de qm^ep words,
    /// sum (a_i d_i)^2 elements (a generalized Pauli basis per block).
    std::vector<MonomialMatrix> b_monomial_basis() const {
        std::vector<MonomialMatrix> out;
        for (std::int64_t i = 0; i < dims.n; ++i) {
            for (std::int64_t al = 0; al < dims.a[i]; ++al)
                for (std::int64_t be = 0; be < dims.a[i]; ++be)
                    for (std::int64_t de = 0; de < dims.mult[i]; ++de)
                        for (std::int64_t ep = 0; ep < dims.mult[i]; ++ep) {
                            MonomialMatrix m = mono_mul(mono_pow(p[i], al), mono_pow(q[i], be));
                            m = mono_mul(m, mono_pow(pm[i], de));
                            m = mono_mul(m, mono_pow(qm[i], ep));
                            out.push_back(m);
                        }
        }
        return out;
    }

    /// Monomial spanning set of M_d from the two-sided r-words over B.
    std::vector<MonomialMatrix> md_spanning_words() const {
        const auto bb = b_monomial_basis();
        std::vector<MonomialMatrix> out = bb;
        for (std::int64_t t = 1; t < dims.n; ++t) {
            const MonomialMatrix rt = mono_pow(r, t);
            for (const auto& b1 : bb)
                for (const auto& b2 : bb) {
                    const MonomialMatrix wrd = mono_mul(mono_mul(b1, rt), b2);
                    if (!wrd.is_zero()) out.push_back(wrd);
                }
        }
        if (dims.n == 1) {
            // degenerate case: r = s already lies in B, nothing to add
        }
        return out;
    }
};

inline MonomialMatrix block_embed(const MonomialMatrix& g, const DerivedDims& dims,
                                  std::int64_t block, bool on_a_coordinate) {
    MonomialMatrix out(dims.d);
    const std::int64_t off = dims.block_offset[block];
    const std::int64_t ai = dims.a[block];
    const std::int64_t di = dims.mult[block];
    for (std::int64_t x = 0; x < ai; ++x)
        for (std::int64_t y = 0; y < di; ++y) {
            const std::int64_t col = off + x * di + y;
            if (on_a_coordinate) {
                if (g.column_zero(x)) continue;
                out.set(off + g.row_of(x) * di + y, col, g.phase_of(x));
            } else {
                if (g.column_zero(y)) continue;
                out.set(off + x * di + g.row_of(y), col, g.phase_of(y));
            }
        }
    return out;
}

inline BaseAlgebra build_base(const DerivedDims& dims) {
    BaseAlgebra base;
    base.dims = dims;
    for (std::int64_t i = 0; i < dims.n; ++i) {
        base.p.push_back(block_embed(clock(dims.a[i]), dims, i, true));
        base.q.push_back(block_embed(shift(dims.a[i]), dims, i, true));
        base.pm.push_back(block_embed(clock(dims.mult[i]), dims, i, false));
        base.qm.push_back(block_embed(shift(dims.mult[i]), dims, i, false));
    }

    // v cycles the last coordinate of each block; s projects onto those
    // n coordinates; r = s v s; w weights block i by gamma^(i-1).
    std::vector<std::int64_t> cycle;
    for (std::int64_t i = 0; i < dims.n; ++i)
        cycle.push_back(dims.block_offset[i] + dims.block_size[i] - 1);

    MonomialMatrix v = MonomialMatrix::identity(dims.d);
    for (std::int64_t t = 0; t < dims.n; ++t)
        v.set(cycle[(t + 1) % dims.n], cycle[t], Phase::one());
    base.v = v;

    MonomialMatrix s(dims.d);
    for (const auto c : cycle) s.set(c, c, Phase::one());
    base.s = s;

    base.r = mono_mul(mono_mul(s, v), s);

    MonomialMatrix w(dims.d);
    for (std::int64_t i = 0; i < dims.n; ++i) {
        const Phase ph = dims.gamma().pow(i);
        const std::int64_t lo = dims.block_offset[i];
        for (std::int64_t t = 0; t < dims.block_size[i]; ++t) w.set(lo + t, lo + t, ph);
    }
    base.w = w;
    return base;
}

inline bool mono_commute(const MonomialMatrix& a, const MonomialMatrix& b) {
    return mono_mul(a, b) == mono_mul(b, a);
}

/// Exact verification of the defining identities of the base objects.
inline CheckReport check_base_relations(const BaseAlgebra& base) {
    CheckReport rep;
    const auto& dims = base.dims;
    const std::int64_t n = dims.n;

    rep.check(mono_pow(base.v, n).is_identity(), "v^n = 1", "base.v-order");

    // v = 1 - s + r: the complement diagonal plus r (disjoint supports).
    MonomialMatrix comp(dims.d);
    for (std::int64_t t = 0; t < dims.d; ++t)
        if (base.s.column_zero(t)) comp.set(t, t, Phase::one());
    rep.check(mono_block_sum(comp, base.r) == base.v, "v = 1 - s + r", "base.v-decomposition");

    rep.check(mono_pow(base.r, n) == base.s, "r^n = s", "base.r-power-cycle");
    rep.check(mono_commute(base.s, base.v), "[s, v] = 0", "base.s-v-commute");
    rep.check(mono_mul(base.r.adjoint(), base.r) == base.s &&
                  mono_mul(base.r, base.r.adjoint()) == base.s,
              "r* r = r r* = s", "base.r-partial-isometry");

    bool central = true;
    for (std::int64_t i = 0; i < n; ++i)
        central = central && mono_commute(base.w, base.p[i]) && mono_commute(base.w, base.q[i]) &&
                  mono_commute(base.w, base.pm[i]) && mono_commute(base.w, base.qm[i]);
    rep.check(central, "w central in B", "base.w-central");

    if (n > 1) {
        const MonomialMatrix ad = mono_mul(mono_mul(base.w, base.r), base.w.adjoint());
        rep.check(ad == base.r.scaled(dims.gamma()), "Ad w(r) = gamma r", "base.w-twists-r");
    } else {
        rep.inconclusive("Ad w(r) = gamma r", "base.w-twists-r",
                         "skipped for one summand (gamma = 1)");
    }

    for (std::int64_t i = 0; i < n; ++i) {
        const auto lhs = mono_mul(base.pm[i], base.qm[i]);
        const auto rhs = mono_mul(base.qm[i], base.pm[i]).scaled(dims.rho_i(i));
        rep.check(lhs == rhs, "pm_" + std::to_string(i + 1) + " qm_" + std::to_string(i + 1) +
                      " = rho qm pm", "base.block-weyl-pair");
        const auto lhs2 = mono_mul(base.p[i], base.q[i]);
        const auto rhs2 = mono_mul(base.q[i], base.p[i]).scaled(dims.gamma_i(i));
        rep.check(lhs2 == rhs2, "p_" + std::to_string(i + 1) + " q_" + std::to_string(i + 1) +
                      " = gamma q p", "base.a-weyl-pair");
    }

    // Distinct blocks multiply to zero.
    bool ortho = true;
    for (std::int64_t i = 0; i < n && ortho; ++i)
        for (std::int64_t j = 0; j < n && ortho; ++j)
            if (i != j) ortho = mono_mul(base.p[i], base.qm[j]).is_zero() &&
                                mono_mul(base.qm[i], base.q[j]).is_zero();
    rep.check(ortho, "distinct blocks orthogonal", "base.block-orthogonality");

    // s B s is abelian (over the generator families).
    std::vector<MonomialMatrix> gens;
    for (std::int64_t i = 0; i < n; ++i) {
        gens.push_back(base.p[i]);
        gens.push_back(base.q[i]);
        gens.push_back(base.pm[i]);
        gens.push_back(base.qm[i]);
    }
    bool abelian = true;
    std::vector<MonomialMatrix> sgs;
    for (const auto& g : gens) sgs.push_back(mono_mul(mono_mul(base.s, g), base.s));
    for (std::size_t i = 0; i < sgs.size(); ++i)
        for (std::size_t j = i + 1; j < sgs.size(); ++j)
            abelian = abelian && mono_commute(sgs[i], sgs[j]);
    rep.check(abelian, "s B s abelian", "base.compressed-abelian");

    // Ad v maps s B s into itself: rank of {s b s} does not grow when the
    // conjugates are added.
    {
        std::vector<MonomialMatrix> sbs;
        for (const auto& b : base.b_monomial_basis()) {
            const auto x = mono_mul(mono_mul(base.s, b), base.s);
            if (!x.is_zero()) sbs.push_back(x);
        }
        const auto r0 = mono_gram_rank(sbs);
        auto both = sbs;
        for (const auto& g : sgs) {
            const auto x = mono_mul(mono_mul(base.v, g), base.v.adjoint());
            if (!x.is_zero()) both.push_back(x);
        }
        rep.check(mono_gram_rank(both) == r0, "Ad v preserves s B s", "base.compression-stable",
                  std::nullopt, "rank " + std::to_string(r0));
    }

    // dim span(B) and the full-span rank of <B, r>.
    const auto bb = base.b_monomial_basis();
    const auto dimb = mono_gram_rank(bb);
    rep.check(dimb == dims.dim_b(), "dim span(B)", "base.block-dimension", std::nullopt,
              "rank " + std::to_string(dimb) + " expected " + std::to_string(dims.dim_b()));
    const auto words = base.md_spanning_words();
    const auto dmd = mono_gram_rank(words);
    rep.check(dmd == dims.d * dims.d, "<B, r> spans M_d", "base.two-sided-r-span", std::nullopt,
              "rank " + std::to_string(dmd) + " expected " + std::to_string(dims.d * dims.d));

    // The trace restricted to A gives the input weights: the minimal
    // projection of summand i has normalized trace d_i/d = b_i/c_i.
    bool weights_ok = true;
    for (std::int64_t i = 0; i < n; ++i) {
        MonomialMatrix proj(dims.d);
        for (std::int64_t y = 0; y < dims.mult[i]; ++y) {
            const std::int64_t t = dims.block_offset[i] + y;
            proj.set(t, t, Phase::one());
        }
        const double got = proj.trace().real();
        const double want = static_cast<double>(dims.mult[i]) / static_cast<double>(dims.d);
        weights_ok = weights_ok && std::abs(got - want) < 1e-15;
    }
    rep.check(weights_ok, "trace extends the weight vector", "base.trace-extension");

    return rep;
}

}  // namespace sflab
