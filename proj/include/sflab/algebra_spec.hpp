#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sflab/phase.hpp"
#include "sflab/rational.hpp"

namespace sflab {

/// Summand i describes the block M_a with trace weight b/c per minimal
/// projection. Stored with b/c reduced; summand order is significant (it
/// fixes block order downstream).
struct Summand {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    friend bool operator==(const Summand& x, const Summand& y) {
        return x.a == y.a && Rat(x.b, x.c) == Rat(y.b, y.c);
    }
};

struct AlgebraSpec {
    std::vector<Summand> summands;
    std::int64_t n() const { return static_cast<std::int64_t>(summands.size()); }
};

inline constexpr std::int64_t kMaxAmbientD = 1 << 20;

/// All derived block data of the base embedding A ⊂ B ⊂ M_d.
struct DerivedDims {
    std::int64_t d = 0;               // c_1 * c_2 * ... * c_n
    std::int64_t n = 0;               // summand count
    std::vector<std::int64_t> a;      // block matrix sizes
    std::vector<std::int64_t> mult;   // d_i = d * b_i / c_i
    std::vector<std::int64_t> block_size;    // a_i * d_i
    std::vector<std::int64_t> block_offset;  // cumulative, 0-based

    Phase gamma() const { return Phase::root(1, n); }            // exp(2*pi*i/n)
    Phase gamma_i(std::int64_t i) const { return Phase::root(1, a[i]); }
    Phase rho_i(std::int64_t i) const { return Phase::root(1, mult[i]); }

    /// dim A = sum a_i^2
    std::int64_t dim_a() const {
        std::int64_t s = 0;
        for (auto ai : a) s += ai * ai;
        return s;
    }
    /// dim B = sum (a_i d_i)^2
    std::int64_t dim_b() const {
        std::int64_t s = 0;
        for (auto bs : block_size) s += bs * bs;
        return s;
    }
};

enum class SpecErrorKind { ZeroEntry, SumNotOne, NonIntegralMultiplicity, CapacityExceeded, Malformed };

struct SpecError {
    SpecErrorKind kind;
    std::string detail;
};

struct ValidationResult {
    std::optional<DerivedDims> dims;
    std::vector<SpecError> errors;
    bool ok() const { return dims.has_value(); }
};

inline ValidationResult validate_spec(const AlgebraSpec& spec) {
    ValidationResult res;
    if (spec.summands.empty()) {
        res.errors.push_back({SpecErrorKind::Malformed, "empty summand list"});
        return res;
    }
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        const auto& s = spec.summands[i];
        if (s.a <= 0 || s.b <= 0 || s.c <= 0)
            res.errors.push_back({SpecErrorKind::ZeroEntry,
                                  "summand " + std::to_string(i + 1) + " has a non-positive entry"});
    }
    if (!res.errors.empty()) return res;

    std::int64_t d = 1;
    for (const auto& s : spec.summands) {
        if (d > kMaxAmbientD / s.c) {
            res.errors.push_back({SpecErrorKind::CapacityExceeded,
                                  "d = c_1*...*c_n exceeds capacity 2^20"});
            return res;
        }
        d *= s.c;
    }

    Rat sum(0, 1);
    for (const auto& s : spec.summands) sum = sum + Rat(s.b, s.c) * Rat(s.a, 1);
    if (!(sum == Rat(1, 1))) {
        res.errors.push_back({SpecErrorKind::SumNotOne,
                              "trace-weighted dimensions sum to " + sum.str() + ", expected 1"});
        return res;
    }

    DerivedDims dims;
    dims.d = d;
    dims.n = spec.n();
    std::int64_t offset = 0;
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        const auto& s = spec.summands[i];
        const Rat di = Rat(d, 1) * Rat(s.b, s.c);
        if (!di.is_integer() || di.num <= 0) {
            res.errors.push_back({SpecErrorKind::NonIntegralMultiplicity,
                                  "d*b/c for summand " + std::to_string(i + 1) +
                                      " is " + di.str() + ", not a positive integer"});
            continue;
        }
        dims.a.push_back(s.a);
        dims.mult.push_back(di.num);
        dims.block_size.push_back(s.a * di.num);
        dims.block_offset.push_back(offset);
        offset += s.a * di.num;
    }
    if (!res.errors.empty()) return res;
    if (offset != d) {
        // Sum a_i d_i = d is an identity once the above pass; kept as a guard.
        res.errors.push_back({SpecErrorKind::Malformed, "block sizes do not fill M_d"});
        return res;
    }
    res.dims = dims;
    return res;
}

inline AlgebraSpec spec_from_json(const nlohmann::json& j) {
    AlgebraSpec spec;
    if (!j.is_object() || !j.contains("summands") || !j["summands"].is_array())
        throw std::invalid_argument("spec file: expected object with a \"summands\" array");
    for (const auto& item : j["summands"]) {
        if (!item.is_object() || !item.contains("a") || !item.contains("b") || !item.contains("c"))
            throw std::invalid_argument("spec file: each summand needs integer fields a, b, c");
        for (const char* k : {"a", "b", "c"})
            if (!item[k].is_number_integer())
                throw std::invalid_argument(std::string("spec file: field \"") + k +
                                            "\" must be an integer (rationals are given as b, c)");
        Summand s{item["a"].get<std::int64_t>(), item["b"].get<std::int64_t>(),
                  item["c"].get<std::int64_t>()};
        if (s.b > 0 && s.c > 0) {
            const Rat w(s.b, s.c);  // store reduced, e.g. 3/6 -> 1/2
            s.b = w.num;
            s.c = w.den;
        }
        spec.summands.push_back(s);
    }
    return spec;
}

inline nlohmann::json spec_to_json(const AlgebraSpec& spec) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : spec.summands)
        arr.push_back({{"a", s.a}, {"b", s.b}, {"c", s.c}});
    return nlohmann::json{{"summands", arr}};
}

inline AlgebraSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed spec file " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

/// The two worked example specs used throughout the tests.
inline AlgebraSpec cs1_spec() { return AlgebraSpec{{{1, 1, 2}, {1, 1, 2}}}; }
inline AlgebraSpec cs2_spec() { return AlgebraSpec{{{2, 1, 4}, {1, 1, 2}}}; }
/// One-summand degenerate case (A = C with weight 1, d = 2).
inline AlgebraSpec degenerate_spec() { return AlgebraSpec{{{1, 2, 2}}}; }

}  // namespace sflab
