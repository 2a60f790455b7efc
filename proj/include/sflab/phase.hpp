#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sflab {

/// Exact root of unity exp(2*pi*i * num/den), stored as a reduced fraction
/// with 0 <= num < den. Products and powers are integer arithmetic, so
/// relation checks on phases are exact.
struct Phase {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Phase() = default;

    Phase(std::int64_t numerator, std::int64_t modulus) {
        if (modulus <= 0) throw std::invalid_argument("Phase: modulus must be positive");
        std::int64_t n = numerator % modulus;
        if (n < 0) n += modulus;
        const std::int64_t g = std::gcd(n, modulus);
        num = (n == 0) ? 0 : n / g;
        den = (n == 0) ? 1 : modulus / g;
    }

    static Phase one() { return Phase{}; }

    /// exp(2*pi*i * k/m)
    static Phase root(std::int64_t k, std::int64_t m) { return Phase(k, m); }

    bool is_one() const { return num == 0; }

    /// Multiplicative order (den after reduction; 1 for the trivial phase).
    std::int64_t order() const { return den; }

    friend bool operator==(const Phase& a, const Phase& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }

    friend Phase operator*(const Phase& a, const Phase& b) {
        const std::int64_t g = std::gcd(a.den, b.den);
        const __int128 l = static_cast<__int128>(a.den) / g * b.den;
        if (l > INT64_MAX) throw std::overflow_error("Phase: modulus overflow");
        const std::int64_t lcm = static_cast<std::int64_t>(l);
        const __int128 n = static_cast<__int128>(a.num) * (lcm / a.den)
                         + static_cast<__int128>(b.num) * (lcm / b.den);
        return Phase(static_cast<std::int64_t>(n % lcm), lcm);
    }

    Phase conj() const { return Phase(den - num, den); }

    Phase pow(std::int64_t k) const {
        const __int128 kk = static_cast<__int128>(k) % den;
        __int128 n = static_cast<__int128>(num) * kk % den;
        if (n < 0) n += den;
        return Phase(static_cast<std::int64_t>(n), den);
    }

    std::complex<double> value() const {
        if (num == 0) return {1.0, 0.0};
        if (2 * num == den) return {-1.0, 0.0};
        const double t = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(t), std::sin(t)};
    }
};

/// Geometric character sum (1/m) * sum_{t<m} phi^t; exactly zero iff phi is a
/// nontrivial m-th root (order divides m, order > 1). Returns whether the sum
/// vanishes, decided in integer arithmetic.
inline bool character_sum_vanishes(const Phase& phi, std::int64_t m) {
    if (phi.is_one()) return false;
    return m % phi.order() == 0;
}

}  // namespace sflab
