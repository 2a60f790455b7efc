#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sflab/algebra_spec.hpp"
#include "sflab/monomial.hpp"
#include "sflab/numerics.hpp"
#include "sflab/shift_sets.hpp"
#include "sflab/weyl.hpp"

namespace sflab {

struct LevelOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { P, Q, PM, QM, R };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::P: return "p";
        case Family::Q: return "q";
        case Family::PM: return "pm";
        case Family::QM: return "qm";
        case Family::R: return "r";
    }
    return "?";
}

/// Symbolic handle for one tower generator (power of one family member at
/// one level). `summand` is ignored for the r family.
struct GeneratorRef {
    std::int64_t level = 1;
    Family family = Family::P;
    std::int64_t summand = 0;  // 0-based
    std::int64_t power = 1;

    std::string name() const {
        std::string s = family_name(family);
        if (family != Family::R) s += std::to_string(summand + 1);
        s += "@" + std::to_string(level);
        if (power != 1) s += "^" + std::to_string(power);
        return s;
    }
};

struct LevelGens {
    std::vector<MonomialMatrix> p, q, pm, qm;
    MonomialMatrix r;
    MonomialMatrix s;  // r r* embedded
    MonomialMatrix v;  // 1 - s + r, the unitary substitute for r
};

inline constexpr std::int64_t kDefaultCapacity = 1 << 16;

/// Generator families of M_K = (x)^K M_d with the triangular-set tails, all
/// embedded as monomials in M_{d^K}.
class Tower {
public:
    AlgebraSpec spec;
    DerivedDims dims;
    std::int64_t depth = 0;
    std::int64_t ambient = 0;
    BaseAlgebra base;              // level-1 objects in M_d, un-embedded
    std::vector<LevelGens> levels; // levels[k-1] = level k

    const MonomialMatrix& generator(std::int64_t level, Family f, std::int64_t summand) const {
        const auto& lg = levels.at(static_cast<std::size_t>(level - 1));
        switch (f) {
            case Family::P: return lg.p.at(static_cast<std::size_t>(summand));
            case Family::Q: return lg.q.at(static_cast<std::size_t>(summand));
            case Family::PM: return lg.pm.at(static_cast<std::size_t>(summand));
            case Family::QM: return lg.qm.at(static_cast<std::size_t>(summand));
            case Family::R: return lg.r;
        }
        throw std::logic_error("unreachable");
    }

    MonomialMatrix resolve(const GeneratorRef& ref) const {
        if (ref.level < 1 || ref.level > depth)
            throw LevelOverflow("generator level " + std::to_string(ref.level) +
                                " outside tower of depth " + std::to_string(depth));
        const auto& g = generator(ref.level, ref.family, ref.summand);
        return ref.power == 1 ? g : mono_pow(g, ref.power);
    }

    /// The slot-sigma tensor factor (in M_d) of the level-k generator. The
    /// embedded matrix is the tensor product of these over sigma = 1..depth.
    MonomialMatrix slot_factor(std::int64_t level, Family f, std::int64_t summand,
                               std::int64_t sigma) const {
        const std::int64_t k = level;
        if (sigma > k) return MonomialMatrix::identity(dims.d);
        if (sigma == k) {
            switch (f) {
                case Family::P: return base.p[summand];
                case Family::Q: return base.q[summand];
                case Family::PM: return base.pm[summand];
                case Family::QM: return base.qm[summand];
                case Family::R: return base.r;
            }
        }
        // sigma < k: the tail controlled by k - sigma
        const std::int64_t diff = k - sigma;
        if (f == Family::R)
            return shift_set_member(ShiftSet::S1, diff) ? base.w
                                                        : MonomialMatrix::identity(dims.d);
        if (f == Family::QM) {
            MonomialMatrix out = MonomialMatrix::identity(dims.d);
            if (shift_set_member(ShiftSet::S2, diff)) out = mono_mul(out, base.qm_padded(summand));
            if (shift_set_member(ShiftSet::S3, diff)) out = mono_mul(out, base.pm_padded(summand));
            return out;
        }
        return MonomialMatrix::identity(dims.d);
    }

    std::vector<GeneratorRef> level_refs(std::int64_t level) const {
        std::vector<GeneratorRef> out;
        for (auto f : {Family::P, Family::Q, Family::PM, Family::QM})
            for (std::int64_t j = 0; j < dims.n; ++j) out.push_back({level, f, j, 1});
        out.push_back({level, Family::R, 0, 1});
        return out;
    }

    std::vector<GeneratorRef> all_refs() const {
        std::vector<GeneratorRef> out;
        for (std::int64_t k = 1; k <= depth; ++k)
            for (const auto& r : level_refs(k)) out.push_back(r);
        return out;
    }
};

inline GeneratorRef phi_image(const Tower& tower, const GeneratorRef& ref) {
    if (ref.level + 1 > tower.depth)
        throw LevelOverflow("endomorphism image of level " + std::to_string(ref.level) +
                            " exceeds tower depth " + std::to_string(tower.depth));
    GeneratorRef out = ref;
    ++out.level;
    return out;
}

inline MonomialMatrix resolve_word(const Tower& tower, const std::vector<GeneratorRef>& word) {
    MonomialMatrix acc = MonomialMatrix::identity(tower.ambient);
    for (const auto& ref : word) acc = mono_mul(acc, tower.resolve(ref));
    return acc;
}

inline MonomialMatrix phi_apply(const Tower& tower, const std::vector<GeneratorRef>& word) {
    MonomialMatrix acc = MonomialMatrix::identity(tower.ambient);
    for (const auto& ref : word) acc = mono_mul(acc, tower.resolve(phi_image(tower, ref)));
    return acc;
}

inline Tower build_tower(const AlgebraSpec& spec, std::int64_t depth,
                         std::int64_t capacity = kDefaultCapacity) {
    auto validation = validate_spec(spec);
    if (!validation.ok())
        throw std::invalid_argument("build_tower: invalid spec: " +
                                    validation.errors.front().detail);
    Tower t;
    t.spec = spec;
    t.dims = *validation.dims;
    t.depth = depth;
    if (depth < 1) throw std::invalid_argument("build_tower: depth must be >= 1");

    std::int64_t ambient = 1;
    for (std::int64_t k = 0; k < depth; ++k) {
        if (ambient > capacity / t.dims.d)
            throw CapacityError("build_tower: ambient dimension d^K = " +
                                std::to_string(t.dims.d) + "^" + std::to_string(depth) +
                                " exceeds capacity " + std::to_string(capacity));
        ambient *= t.dims.d;
    }
    t.ambient = ambient;
    t.base = build_base(t.dims);

    auto assemble = [&](std::int64_t level, Family f, std::int64_t summand) {
        MonomialMatrix acc = t.slot_factor(level, f, summand, 1);
        for (std::int64_t sigma = 2; sigma <= depth; ++sigma)
            acc = mono_tensor(acc, t.slot_factor(level, f, summand, sigma));
        return acc;
    };

    for (std::int64_t k = 1; k <= depth; ++k) {
        LevelGens lg;
        for (std::int64_t j = 0; j < t.dims.n; ++j) {
            lg.p.push_back(assemble(k, Family::P, j));
            lg.q.push_back(assemble(k, Family::Q, j));
            lg.pm.push_back(assemble(k, Family::PM, j));
            lg.qm.push_back(assemble(k, Family::QM, j));
        }
        lg.r = assemble(k, Family::R, 0);
        lg.s = mono_mul(lg.r, lg.r.adjoint());
        MonomialMatrix comp(ambient);
        for (std::int64_t c = 0; c < ambient; ++c)
            if (lg.s.column_zero(c)) comp.set(c, c, Phase::one());
        lg.v = mono_block_sum(comp, lg.r);
        t.levels.push_back(std::move(lg));
    }
    return t;
}

}  // namespace sflab
