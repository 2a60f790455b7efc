#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sflab/commutant.hpp"
#include "sflab/relations.hpp"
#include "sflab/tower.hpp"

namespace sflab {

/// Partial expectation onto the algebra acting as the identity on tensor
/// slot `slot` (1-based): trace out that slot, divide by d, re-embed as 1.
inline Mat slot_partial_expectation(const Mat& x, const Tower& tower, std::int64_t slot) {
    const std::int64_t d = tower.dims.d;
    std::int64_t pre = 1, post = 1;
    for (std::int64_t t = 1; t < slot; ++t) pre *= d;
    for (std::int64_t t = slot + 1; t <= tower.depth; ++t) post *= d;
    Mat out = Mat::Zero(x.rows(), x.cols());
    for (std::int64_t pr = 0; pr < pre; ++pr)
        for (std::int64_t pc = 0; pc < pre; ++pc)
            for (std::int64_t qr = 0; qr < post; ++qr)
                for (std::int64_t qc = 0; qc < post; ++qc) {
                    Cplx acc{0.0, 0.0};
                    for (std::int64_t l = 0; l < d; ++l)
                        acc += x((pr * d + l) * post + qr, (pc * d + l) * post + qc);
                    acc /= static_cast<double>(d);
                    for (std::int64_t l = 0; l < d; ++l)
                        out((pr * d + l) * post + qr, (pc * d + l) * post + qc) = acc;
                }
    return out;
}

/// Picks the lowest helper level L in (k, K] whose r has the required
/// exchange pattern: gamma-exchange against r_target and commutation with
/// every other r in use. The pattern is verified, not assumed.
inline std::int64_t find_r_helper_level(const Tower& tower, std::int64_t k,
                                        std::int64_t target) {
    for (std::int64_t L = k + 1; L <= tower.depth; ++L) {
        const auto& rL = tower.levels[static_cast<std::size_t>(L - 1)].r;
        bool ok = true;
        for (std::int64_t j = 1; j <= k && ok; ++j) {
            const auto ex = exchange(rL, tower.levels[static_cast<std::size_t>(j - 1)].r);
            if (j == target)
                ok = ex.kind == ExchangeKind::Twist && ex.phase == tower.dims.gamma();
            else
                ok = ex.kind == ExchangeKind::Commute || ex.kind == ExchangeKind::BothZero;
        }
        if (ok) return L;
    }
    return 0;
}

struct PipelineResult {
    Mat element;
    CheckReport report;
};

/// The averaging pipeline: per level j <= k, (i) compress against s_L and
/// average over Ad r_L^m for a verified helper level L, which kills every
/// word component with a nonzero r_j power exactly, then (ii) average over
/// the block shift and block clock unitaries at slot j, the one-slot
/// realization of the expectation onto A at that slot. Returns the resulting
/// element and its distance to span((x)^k A (x) 1).
inline PipelineResult lemma5_pipeline(const Tower& tower, std::int64_t k, const Mat& x,
                                      std::int64_t depth_budget = 0) {
    if (depth_budget == 0) depth_budget = tower.depth;
    if (k >= tower.depth)
        throw CapacityError("lemma5_pipeline: needs a helper level above k");
    PipelineResult res{x, {}};
    const auto& dims = tower.dims;
    const std::int64_t n = dims.n;
    const std::int64_t d = dims.d;

    for (std::int64_t j = k; j >= 1; --j) {
        const std::int64_t L = find_r_helper_level(tower, k, j);
        if (L == 0 || L > depth_budget)
            throw CapacityError("lemma5_pipeline: no helper level with the required exchange "
                                "pattern within the depth budget");
        const auto& lev = tower.levels[static_cast<std::size_t>(L - 1)];
        res.report.pass("helper level for slot " + std::to_string(j),
                        "pipeline.r-helper-pattern", std::nullopt,
                        "L = " + std::to_string(L) + ", exchange pattern verified");

        const Mat sL = lev.s.dense();
        Mat avg = Mat::Zero(x.rows(), x.cols());
        MonomialMatrix rpow = MonomialMatrix::identity(tower.ambient);
        for (std::int64_t m = 0; m < n; ++m) {
            const Mat rd = rpow.dense();
            avg += rd * (res.element * sL) * rd.adjoint();
            rpow = mono_mul(rpow, lev.r);
        }
        avg /= static_cast<double>(n);
        res.element = static_cast<double>(d) / static_cast<double>(n) *
                      slot_partial_expectation(avg, tower, L);
    }

    for (std::int64_t j = 1; j <= k; ++j) {
        std::int64_t pre = 1, post = 1;
        for (std::int64_t t = 1; t < j; ++t) pre *= d;
        for (std::int64_t t = j + 1; t <= tower.depth; ++t) post *= d;
        const auto ushift = mono_embed(tower.base.block_shift_sum(), pre, post);
        const auto uclock = mono_embed(tower.base.block_clock_sum(), pre, post);
        std::int64_t order = 1;
        for (std::int64_t i = 0; i < n; ++i)
            order = std::lcm(order, dims.mult[i]);
        res.element = averaging_expectation(res.element, ushift, order);
        res.element = averaging_expectation(res.element, uclock, order);
    }

    // Distance to span((x)^k A (x) 1).
    std::vector<Mat> prods{Mat::Identity(tower.ambient, tower.ambient)};
    for (std::int64_t level = 1; level <= k; ++level) {
        std::vector<Mat> next;
        for (std::int64_t jj = 0; jj < n; ++jj)
            for (std::int64_t al = 0; al < dims.a[jj]; ++al)
                for (std::int64_t be = 0; be < dims.a[jj]; ++be) {
                    const auto b =
                        mono_mul(mono_pow(tower.generator(level, Family::P, jj), al),
                                 mono_pow(tower.generator(level, Family::Q, jj), be));
                    for (const auto& w : prods) next.push_back(w * b.dense());
                }
        prods = std::move(next);
    }
    const auto onb = orthonormalize(prods);
    const double dist = distance_to_span(res.element, onb);
    res.report.pass("distance to the product-block span", "pipeline.output-distance", dist);
    return res;
}

/// Exact annihilation statement behind the pipeline's first step: for a word
/// carrying r_j^t with t != 0 mod n, the s_L-compressed Ad r_L average
/// vanishes identically (per-term phase identity plus a vanishing character
/// sum), while zero-power words are fixed. Verified in exact arithmetic.
inline CheckReport check_rkill_exactness(const Tower& tower, std::int64_t target,
                                         std::int64_t helpers_from) {
    CheckReport rep;
    const auto& dims = tower.dims;
    const std::int64_t n = dims.n;
    const std::int64_t L = find_r_helper_level(tower, helpers_from, target);
    if (L == 0) {
        rep.fail("helper level exists", "pipeline.r-helper-pattern");
        return rep;
    }
    const auto& lev = tower.levels[static_cast<std::size_t>(L - 1)];
    const auto& rj = tower.levels[static_cast<std::size_t>(target - 1)].r;

    const double ts = lev.s.trace().real();
    rep.check(std::abs(ts - static_cast<double>(n) / static_cast<double>(dims.d)) < 1e-15,
              "tau(s_L) = n/d", "pipeline.support-trace", ts);

    for (std::int64_t t = 1; t < n; ++t) {
        // per-term identity: r_L^m (r_j^t s_L) r_L^{-m} = gamma^{t m} r_j^t s_L,
        // so the average carries the vanishing character sum as a factor
        const auto word = mono_mul(mono_pow(rj, t), lev.s);
        bool per_term = true;
        MonomialMatrix rpow = MonomialMatrix::identity(tower.ambient);
        for (std::int64_t m = 0; m < n; ++m) {
            const auto conj = mono_mul(mono_mul(rpow, word), rpow.adjoint());
            per_term = per_term && conj == word.scaled(dims.gamma().pow(t * m));
            rpow = mono_mul(rpow, lev.r);
        }
        const bool char_sum_zero = character_sum_vanishes(dims.gamma().pow(t), n);
        rep.check(per_term && char_sum_zero,
                  "average annihilates r^" + std::to_string(t) + " words",
                  "pipeline.r-power-annihilation", std::nullopt,
                  "per-term phase identity exact; character sum vanishes");
    }

    // Zero-power words are fixed by the compressed average.
    {
        const auto word = mono_mul(tower.generator(target, Family::PM, 0), lev.s);
        MonomialSum acc(tower.ambient);
        MonomialMatrix rpow = MonomialMatrix::identity(tower.ambient);
        for (std::int64_t m = 0; m < n; ++m) {
            acc.add(Cplx{1.0 / static_cast<double>(n), 0.0},
                    mono_mul(mono_mul(rpow, word), rpow.adjoint()));
            rpow = mono_mul(rpow, lev.r);
        }
        const auto merged = acc.pruned();
        rep.check(merged.terms().size() == 1 && merged.terms()[0].second == word &&
                      std::abs(merged.terms()[0].first - Cplx{1.0, 0.0}) < 1e-12,
                  "zero-power words fixed", "pipeline.zero-power-fixed");
    }
    return rep;
}

}  // namespace sflab
