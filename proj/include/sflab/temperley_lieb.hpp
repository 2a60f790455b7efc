#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sflab/commutant.hpp"
#include "sflab/dense.hpp"
#include "sflab/numerics.hpp"
#include "sflab/report.hpp"
#include "sflab/tower.hpp"

namespace sflab {

/// lambda = p/q with coprime positive integers and q > 4p, so the index
/// 1/lambda is a rational strictly above 4.
struct TLParams {
    std::int64_t p = 1;
    std::int64_t q = 5;

    TLParams(std::int64_t pp, std::int64_t qq) : p(pp), q(qq) {
        if (p <= 0 || q <= 0) throw std::invalid_argument("TLParams: p, q must be positive");
        if (std::gcd(p, q) != 1) {
            const auto g = std::gcd(p, q);
            p /= g;
            q /= g;
        }
        if (q <= 4 * p)
            throw std::invalid_argument("TLParams: the index 1/lambda must lie in (4, oo) "
                                        "(q > 4p required)");
    }

    double lambda() const { return static_cast<double>(p) / static_cast<double>(q); }
};

/// Finite matrix model of the projection family: small e-matrices over
/// coordinate blocks with multiplicities, realized dense inside M_D with the
/// normalized trace. The weights are the block traces.
struct BlockModel {
    std::int64_t m = 3;                // chain length modeled (3 or 4)
    TLParams params{1, 5};
    std::vector<std::int64_t> mult;    // multiplicity per coordinate
    std::int64_t dense_dim = 0;        // sum of multiplicities
    std::vector<Mat> e_small;          // e_2, e_3 (, e_4) over the coordinates
    std::vector<double> weights;       // Markov weight per coordinate

    std::int64_t coords() const { return static_cast<std::int64_t>(mult.size()); }

    std::int64_t offset(std::int64_t c) const {
        std::int64_t o = 0;
        for (std::int64_t t = 0; t < c; ++t) o += mult[t];
        return o;
    }

    /// Expand a small coordinate matrix to the dense model; entries between
    /// coordinates of equal multiplicity become identity-shaped blocks.
    Mat expand(const Mat& small) const {
        Mat out = Mat::Zero(dense_dim, dense_dim);
        for (std::int64_t r = 0; r < coords(); ++r)
            for (std::int64_t c = 0; c < coords(); ++c) {
                if (small(r, c) == Cplx{0.0, 0.0}) continue;
                if (mult[r] != mult[c])
                    throw std::invalid_argument("BlockModel: entry joins blocks of unequal size");
                for (std::int64_t t = 0; t < mult[r]; ++t)
                    out(offset(r) + t, offset(c) + t) = small(r, c);
            }
        return out;
    }

    Mat e_dense(std::size_t idx) const { return expand(e_small[idx]); }

    /// Weighted trace of a coordinate-respecting small matrix.
    Cplx weighted_trace(const Mat& small) const {
        Cplx acc{0.0, 0.0};
        for (std::int64_t c = 0; c < coords(); ++c) acc += weights[c] * small(c, c);
        return acc;
    }
};

/// Solves the trace identities for the chain weights and checks uniqueness:
/// w1 = w2, (1-2l) w1 = l w3, sum = 1.
inline std::vector<double> solve_markov_weights_m3(double lambda, bool* unique = nullptr) {
    Eigen::Matrix3d a;
    Eigen::Vector3d b;
    a << 1, 1, 1, 1, -1, 0, (1 - 2 * lambda), 0, -lambda;
    b << 1, 0, 0;
    if (unique) *unique = std::abs(a.determinant()) > 1e-12;
    const Eigen::Vector3d w = a.colPivHouseholderQr().solve(b);
    return {w(0), w(1), w(2)};
}

inline BlockModel tl_m3_model(const TLParams& params) {
    BlockModel model;
    model.m = 3;
    model.params = params;
    const std::int64_t p = params.p, q = params.q;
    model.mult = {p, p, q - 2 * p};
    model.dense_dim = q;
    const double l = params.lambda();
    const double mu = std::sqrt(l * (1 - l));
    Mat e2 = Mat::Zero(3, 3), e3 = Mat::Zero(3, 3);
    e3(0, 0) = 1;
    e2(0, 0) = l;
    e2(0, 1) = e2(1, 0) = mu;
    e2(1, 1) = 1 - l;
    model.e_small = {e2, e3};
    model.weights = solve_markov_weights_m3(l);
    return model;
}

inline BlockModel tl_m4_model(const TLParams& params) {
    BlockModel model;
    model.m = 4;
    model.params = params;
    const std::int64_t p = params.p, q = params.q;
    model.mult = {p * p, p * p, p * q - p * p, p * q - p * p, p * q - p * p,
                  q * q - 3 * p * q + p * p};
    model.dense_dim = q * q;
    const double l = params.lambda();
    const double mu = std::sqrt(l * (1 - l));
    const double nu = std::sqrt(l * (1 - 2 * l));
    Mat e2 = Mat::Zero(6, 6), e3 = Mat::Zero(6, 6), e4 = Mat::Zero(6, 6);
    e4(0, 0) = e4(2, 2) = 1;
    e3(0, 0) = e3(2, 2) = l;
    e3(1, 1) = e3(3, 3) = 1 - l;
    e3(0, 1) = e3(1, 0) = e3(2, 3) = e3(3, 2) = mu;
    e2(0, 0) = 1;
    e2(3, 3) = l / (1 - l);
    e2(3, 4) = e2(4, 3) = nu / (1 - l);
    e2(4, 4) = (1 - 2 * l) / (1 - l);
    model.e_small = {e2, e3, e4};
    model.weights.clear();
    for (const auto mlt : model.mult)
        model.weights.push_back(static_cast<double>(mlt) / static_cast<double>(q * q));
    return model;
}

/// Projection and braid-relation audit over a user-supplied family
/// e_2, ..., e_m (dense matrices in a common algebra).
inline CheckReport tl_relation_check(const std::vector<Mat>& es, double lambda,
                                     double tol = 1e-12) {
    CheckReport rep;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto tag = std::to_string(i + 2);
        rep.check(residual(es[i], es[i].adjoint()) <= tol, "e" + tag + " self-adjoint",
                  "tl.projection", residual(es[i], es[i].adjoint()));
        rep.check(residual(es[i] * es[i], es[i]) <= tol, "e" + tag + " idempotent",
                  "tl.projection", residual(es[i] * es[i], es[i]));
    }
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        const auto a = std::to_string(i + 2), b = std::to_string(i + 3);
        const double r1 = residual(es[i] * es[i + 1] * es[i], lambda * es[i]);
        const double r2 = residual(es[i + 1] * es[i] * es[i + 1], lambda * es[i + 1]);
        rep.check(r1 <= tol, "e" + a + " e" + b + " e" + a + " = lambda e" + a,
                  "tl.braid-relation", r1);
        rep.check(r2 <= tol, "e" + b + " e" + a + " e" + b + " = lambda e" + b,
                  "tl.braid-relation", r2);
    }
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 2; j < es.size(); ++j) {
            const double r = residual(es[i] * es[j], es[j] * es[i]);
            rep.check(r <= tol,
                      "[e" + std::to_string(i + 2) + ", e" + std::to_string(j + 2) + "] = 0",
                      "tl.distant-commutation", r);
        }
    return rep;
}

/// Full model audit: relations, traces, weight solution and its uniqueness.
inline CheckReport tl_model_check(const BlockModel& model, double tol = 1e-12) {
    std::vector<Mat> es;
    for (std::size_t i = 0; i < model.e_small.size(); ++i) es.push_back(model.e_dense(i));
    const double l = model.params.lambda();
    CheckReport rep = tl_relation_check(es, l, tol);

    for (std::size_t i = 0; i < es.size(); ++i) {
        const double tr = normalized_trace(es[i]).real();
        rep.check(std::abs(tr - l) <= tol, "tau(e" + std::to_string(i + 2) + ") = lambda",
                  "tl.markov-trace", std::abs(tr - l));
    }
    // weights consistent between block traces and the identity solution
    double wsum = 0.0;
    for (const auto w : model.weights) wsum += w;
    rep.check(std::abs(wsum - 1.0) <= tol, "weights normalized", "tl.markov-weights",
              std::abs(wsum - 1.0));
    if (model.m == 3) {
        bool unique = false;
        const auto w = solve_markov_weights_m3(l, &unique);
        const double res = std::abs(w[0] - l) + std::abs(w[1] - l) + std::abs(w[2] - (1 - 2 * l));
        rep.check(unique && res <= 1e-9, "weights solve the trace identities uniquely",
                  "tl.markov-weights", res);
        // cross-check against the block multiplicities
        double cross = 0.0;
        for (std::size_t c = 0; c < model.weights.size(); ++c)
            cross += std::abs(model.weights[c] - static_cast<double>(model.mult[c]) /
                                                     static_cast<double>(model.dense_dim));
        rep.check(cross <= 1e-12, "weights equal the block traces", "tl.markov-weights", cross);
    }
    if (model.m == 4) {
        const Mat e2e4 = model.e_small[0] * model.e_small[2];
        Mat want = Mat::Zero(6, 6);
        want(0, 0) = 1;
        rep.check(residual(e2e4, want) <= tol, "e2 e4 is the corner projection",
                  "tl.corner-projection", residual(e2e4, want));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Markov property on Q-form elements
// ---------------------------------------------------------------------------

/// Random element in the m=3 model's Q-form: x = diag(y, y, z) with the trace
/// tie p*Tr(z) = (q-2p)*Tr(y). The tie is the content of the derived trace
/// identities; without it (or with wrong weights) the Markov property fails.
inline Mat random_q_form_m3(const BlockModel& model, std::mt19937_64& rng) {
    const std::int64_t p = model.mult[0];
    const std::int64_t z_dim = model.mult[2];
    std::normal_distribution<double> dist;
    Mat y(p, p), z(z_dim, z_dim);
    for (std::int64_t i = 0; i < p; ++i)
        for (std::int64_t j = 0; j < p; ++j) y(i, j) = Cplx{dist(rng), dist(rng)};
    for (std::int64_t i = 0; i < z_dim; ++i)
        for (std::int64_t j = 0; j < z_dim; ++j) z(i, j) = Cplx{dist(rng), dist(rng)};
    const Cplx want = y.trace() * static_cast<double>(z_dim) / static_cast<double>(p);
    z += (want - z.trace()) / static_cast<double>(z_dim) * Mat::Identity(z_dim, z_dim);
    Mat x = Mat::Zero(model.dense_dim, model.dense_dim);
    x.block(0, 0, p, p) = y;
    x.block(p, p, p, p) = y;
    x.block(2 * p, 2 * p, z_dim, z_dim) = z;
    return x;
}

/// tau(e x) = lambda tau(x) for Q-form x, via both the dense normalized trace
/// and the weighted coordinate bookkeeping; plus the derived identities.
/// `weights_override` substitutes wrong weights for the negative control.
inline CheckReport markov_property_check(const BlockModel& model, std::size_t samples,
                                         std::uint64_t seed, double tol = kDefaultTol,
                                         const std::vector<double>* weights_override = nullptr) {
    CheckReport rep;
    if (model.m != 3)
        throw std::invalid_argument("markov_property_check: Q-form sampling models the m=3 chain");
    const double l = model.params.lambda();
    const auto& w = weights_override ? *weights_override : model.weights;
    const Mat e2 = model.e_dense(0);
    const Mat e3 = model.e_dense(1);
    std::mt19937_64 rng(seed);

    double worst = 0.0;
    double worst_weighted = 0.0;
    double worst_ids = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        const Mat x = random_q_form_m3(model, rng);
        const Cplx tx = normalized_trace(x);
        worst = std::max(worst, std::abs(normalized_trace(e2 * x) - l * tx));
        worst = std::max(worst, std::abs(normalized_trace(e3 * x) - l * tx));

        // weighted bookkeeping per coordinate: ntr of each diagonal block
        const std::int64_t p = model.mult[0];
        const std::int64_t zd = model.mult[2];
        const Cplx t1 = x.block(0, 0, p, p).trace() / static_cast<double>(p);
        const Cplx t2 = x.block(p, p, p, p).trace() / static_cast<double>(p);
        const Cplx t3 = x.block(2 * p, 2 * p, zd, zd).trace() / static_cast<double>(zd);
        const Cplx wtx = w[0] * t1 + w[1] * t2 + w[2] * t3;
        const Cplx we3x = w[0] * t1;
        const Cplx we2x = w[0] * l * t1 + w[1] * (1 - l) * t2;
        worst_weighted = std::max(worst_weighted, std::abs(we3x - l * wtx));
        worst_weighted = std::max(worst_weighted, std::abs(we2x - l * wtx));

        // derived identities: tau(x1) = tau(x2), (1-2l) tau(x1) = l tau(x3)
        worst_ids = std::max(worst_ids, std::abs(w[0] * t1 - w[1] * t2));
        worst_ids = std::max(worst_ids, std::abs((1 - 2 * l) * (w[0] * t1) - l * (w[2] * t3)));
    }
    rep.check(worst <= tol, "tau(e x) = lambda tau(x), dense trace", "tl.markov-property", worst);
    rep.check(worst_weighted <= tol, "tau(e x) = lambda tau(x), weighted blocks",
              "tl.markov-property", worst_weighted);
    rep.check(worst_ids <= tol, "derived trace identities", "tl.derived-identities", worst_ids);
    return rep;
}

// ---------------------------------------------------------------------------
// The twisted diagonal element and the kappa expectation
// ---------------------------------------------------------------------------

struct Q14Element {
    std::vector<std::int64_t> block_sizes;       // p^2, pq-p^2, pq-p^2, q^2-3pq+p^2
    std::vector<std::vector<Phase>> block_data;  // diagonal phases per block
    std::int64_t clock_order = 0;                // pq, the order of the underlying shift
};

/// The distinguished diagonal of the twisted generator in the m=4 model:
/// four diagonal blocks of consecutive powers of exp(2 pi i/(pq)) and two
/// identity blocks, laid out over the six coordinates as
/// (x1, x1, x2, x2, x3, x4).
inline Q14Element q14_element(const TLParams& params) {
    const std::int64_t p = params.p, q = params.q;
    const std::int64_t s1 = p * p, s2 = p * q - p * p, s4 = q * q - 3 * p * q + p * p;
    if (s1 <= 0 || s2 <= 0 || s4 <= 0)
        throw std::invalid_argument("q14_element: nonpositive block multiplicity");
    Q14Element out;
    out.clock_order = p * q;
    out.block_sizes = {s1, s2, s2, s4};
    std::vector<Phase> x1, x2, x3, x4;
    for (std::int64_t t = 0; t < s1; ++t) x1.push_back(Phase::root(t, p * q));
    for (std::int64_t t = s1; t < p * q; ++t) x2.push_back(Phase::root(t, p * q));
    x3.assign(static_cast<std::size_t>(s2), Phase::one());
    x4.assign(static_cast<std::size_t>(s4), Phase::one());
    out.block_data = {x1, x2, x3, x4};
    return out;
}

/// Dense diagonal diag(x1, x1, x2, x2, x3, x4) in M_{q^2}.
inline Mat q14_dense(const BlockModel& model, const Q14Element& el) {
    Mat out = Mat::Zero(model.dense_dim, model.dense_dim);
    const std::vector<int> layout{0, 0, 1, 1, 2, 3};  // block index per coordinate
    for (std::int64_t c = 0; c < model.coords(); ++c) {
        const auto& data = el.block_data[static_cast<std::size_t>(layout[c])];
        if (static_cast<std::int64_t>(data.size()) != model.mult[c])
            throw std::invalid_argument("q14_dense: block size mismatch");
        for (std::int64_t t = 0; t < model.mult[c]; ++t)
            out(model.offset(c) + t, model.offset(c) + t) = data[static_cast<std::size_t>(t)].value();
    }
    return out;
}

struct StructureMismatch : std::runtime_error {
    Mat expectation;
    StructureMismatch(const std::string& what, Mat e)
        : std::runtime_error(what), expectation(std::move(e)) {}
};

struct KappaResult {
    double kappa = 0.0;
    double alpha = 0.0;             // coefficient on e4 (expected 2 lambda^2)
    double structure_residual = 0.0;
    double kappa_oracle = 0.0;      // independent weighted-pairing route
    CheckReport report;
};

/// E(e2 D e2 D* e2) onto the {e3,e4}-algebra: verifies the alpha e4 +
/// beta (1-e4) structure, returns kappa = beta/(2 lambda). The tail factor of
/// the twisted generator contributes the overall 2 lambda.
inline KappaResult kappa_compute(const BlockModel& model, double tol = kDefaultTol,
                                 const std::vector<double>* weights_override = nullptr) {
    if (model.m != 4) throw std::invalid_argument("kappa_compute: needs the m=4 model");
    const double l = model.params.lambda();
    const auto el = q14_element(model.params);
    const Mat D = q14_dense(model, el);
    const Mat e2 = model.e_dense(0);
    const Mat e4 = model.e_dense(2);
    const Mat T = e2 * D * e2 * D.adjoint() * e2;

    // basis of the {e3,e4}-algebra: matrix units over the fused coordinate
    // pairs (1,2) and (3,4), plus the complement identity
    const std::int64_t n = model.dense_dim;
    auto pair_unit = [&](std::int64_t rc, std::int64_t cc) {
        Mat u = Mat::Zero(n, n);
        for (std::int64_t t = 0; t < model.mult[rc]; ++t)
            u(model.offset(rc) + t, model.offset(cc) + t) = 1;
        return u;
    };
    const Mat u11 = pair_unit(0, 0) + pair_unit(2, 2);  // = e4
    const Mat u22 = pair_unit(1, 1) + pair_unit(3, 3);
    const Mat u12 = pair_unit(0, 1) + pair_unit(2, 3);
    const Mat u21 = u12.adjoint();
    const Mat z2 = pair_unit(4, 4) + pair_unit(5, 5);

    // expectation coefficients via trace pairings (weighted by the model
    // trace; the override is the wrong-weights negative control)
    auto pairing = [&](const Mat& b, const Mat& x) {
        if (!weights_override) return (b.adjoint() * x).trace() / static_cast<double>(n);
        // wrong-weights trace: per-coordinate weights applied to block traces
        Cplx acc{0.0, 0.0};
        const Mat prod = b.adjoint() * x;
        for (std::int64_t c = 0; c < model.coords(); ++c) {
            const Cplx blocktr =
                prod.block(model.offset(c), model.offset(c), model.mult[c], model.mult[c])
                    .trace() /
                static_cast<double>(model.mult[c]);
            acc += (*weights_override)[static_cast<std::size_t>(c)] * blocktr;
        }
        return acc;
    };
    auto coeff = [&](const Mat& b) { return pairing(b, T) / pairing(b, b); };
    const Cplx c11 = coeff(u11), c22 = coeff(u22), cz = coeff(z2);
    const Cplx c12 = pairing(u12, T), c21 = pairing(u21, T);

    KappaResult res;
    res.alpha = 2 * l * c11.real();
    res.kappa = c22.real();
    res.structure_residual = std::max({std::abs(c12), std::abs(c21), std::abs(c22 - cz),
                                       std::abs(c11.imag()), std::abs(c22.imag())});

    // independent oracle: reconstruct kappa by direct weighted partial
    // traces of the two surviving corner products, no projection machinery
    {
        const double inv = 1.0 / ((1 - l) * (1 - l) * (1 - l));
        const Mat L45 = model.e_small[0].block(3, 3, 2, 2);  // the (4,5) corner of e2
        // G = L A L A* L with A = diag(x2, x3) as mult-sized diagonal blocks
        const auto& x2 = el.block_data[1];
        double acc = 0.0;
        for (std::size_t t = 0; t < x2.size(); ++t) {
            Eigen::Matrix2cd A = Eigen::Matrix2cd::Zero();
            A(0, 0) = x2[t].value();
            A(1, 1) = 1.0;
            const Eigen::Matrix2cd G = L45 * A * L45 * A.adjoint() * L45;
            acc += G(0, 0).real();
        }
        res.kappa_oracle = (1 - l) * inv * (1 - l) * (1 - l) * acc /
                           static_cast<double>(x2.size());
        // (1-l) * ntr(M44) with M44 = (G / (1-l)^3)(0,0) summed over the block
        res.kappa_oracle = (1 - l) * inv * acc / static_cast<double>(x2.size());
    }

    res.report.check(std::abs(res.alpha - 2 * l * l) <= tol, "alpha = 2 lambda^2",
                     "tl.kappa-alpha", std::abs(res.alpha - 2 * l * l));
    res.report.check(res.structure_residual <= tol,
                     "expectation has the alpha e4 + beta (1 - e4) form", "tl.kappa-structure",
                     res.structure_residual);
    res.report.check(std::abs(res.kappa - res.kappa_oracle) <= tol,
                     "projection route matches the weighted-pairing oracle", "tl.kappa-oracle",
                     std::abs(res.kappa - res.kappa_oracle));
    const double bound = l * (1 - l);
    res.report.check(res.kappa >= -tol && res.kappa < bound, "0 <= kappa < lambda(1-lambda)",
                     "tl.kappa-bound", res.kappa);
    if (res.structure_residual > tol)
        throw StructureMismatch("kappa_compute: expectation deviates from the "
                                "alpha e4 + beta (1-e4) form by " +
                                    std::to_string(res.structure_residual),
                                T);
    return res;
}

// ---------------------------------------------------------------------------
// Trace collapse in the tower
// ---------------------------------------------------------------------------

/// tau of a random word equals tau of its collapsed form: summands with
/// nonzero r-powers drop, and each surviving slot factor is replaced by its
/// expectation onto the block-scalar algebra.
inline CheckReport trace_collapse_check(const Tower& tower, std::int64_t k, std::size_t samples,
                                        std::uint64_t seed, double tol = kDefaultTol) {
    CheckReport rep;
    const auto& dims = tower.dims;
    std::mt19937_64 rng(seed);

    // A-basis of the base algebra, dense, for the slot expectation
    std::vector<Mat> a_span;
    for (std::int64_t j = 0; j < dims.n; ++j)
        for (std::int64_t al = 0; al < dims.a[j]; ++al)
            for (std::int64_t be = 0; be < dims.a[j]; ++be)
                a_span.push_back(
                    mono_mul(mono_pow(tower.base.p[j], al), mono_pow(tower.base.q[j], be))
                        .dense());
    const auto a_basis = SubalgebraBasis::from_span(a_span);

    std::uniform_int_distribution<std::int64_t> block_dist(0, dims.n - 1);
    std::uniform_int_distribution<std::int64_t> rpow_dist(0, dims.n - 1);
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        // word = prod_j y_j r_j^{i_j} z_j with y, z single-block monomials
        Cplx collapsed{1.0, 0.0};
        MonomialMatrix word = MonomialMatrix::identity(tower.ambient);
        for (std::int64_t lvl = 1; lvl <= k; ++lvl) {
            const std::int64_t j1 = block_dist(rng), j2 = block_dist(rng);
            const std::int64_t ip = rpow_dist(rng);
            auto rand_block_word = [&](std::int64_t blk) {
                const std::int64_t al = static_cast<std::int64_t>(rng() % dims.a[blk]);
                const std::int64_t de = static_cast<std::int64_t>(rng() % dims.mult[blk]);
                const std::int64_t ep = static_cast<std::int64_t>(rng() % dims.mult[blk]);
                MonomialMatrix m = mono_pow(tower.base.p[blk], al);
                m = mono_mul(m, mono_pow(tower.base.pm[blk], de));
                m = mono_mul(m, mono_pow(tower.base.qm[blk], ep));
                return m;
            };
            const auto y = rand_block_word(j1);
            const auto z = rand_block_word(j2);
            // embedded realizations at this level
            auto realize = [&](const MonomialMatrix& base_word) {
                // products of level generators matching the base word are not
                // needed; the collapse compares traces, so embed slot-wise
                return mono_embed(base_word, [&] {
                    std::int64_t pre = 1;
                    for (std::int64_t s = 1; s < lvl; ++s) pre *= dims.d;
                    return pre;
                }(), [&] {
                    std::int64_t post = 1;
                    for (std::int64_t s = lvl + 1; s <= tower.depth; ++s) post *= dims.d;
                    return post;
                }());
            };
            word = mono_mul(word, realize(y));
            word = mono_mul(word, mono_pow(tower.levels[static_cast<std::size_t>(lvl - 1)].r,
                                           ip));
            word = mono_mul(word, realize(z));
            if (ip != 0) {
                collapsed = Cplx{0.0, 0.0};
            } else {
                const Mat slot_factor = mono_mul(y, z).dense();
                collapsed *= normalized_trace(conditional_expectation(slot_factor, a_basis));
            }
        }
        const Cplx direct = word.trace();
        worst = std::max(worst, std::abs(direct - collapsed));
    }
    rep.check(worst <= tol, "trace equals its collapsed form", "tower.trace-collapse", worst,
              std::to_string(samples) + " sampled words");
    return rep;
}

}  // namespace sflab
