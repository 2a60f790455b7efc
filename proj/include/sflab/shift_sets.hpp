#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sflab {

/// The triangular-number shift sets controlling the tower's tail patterns:
///   S1 = { i(i+1)/2 : i >= 1 }
///   S2 = { i(i+1)/2 : i = 1 mod 3 }
///   S3 = { i(i+1)/2 : i = 2 mod 3 }
enum class ShiftSet { S1, S2, S3 };

/// If t is triangular, returns the index i with t = i(i+1)/2, else 0.
inline std::int64_t triangular_index(std::int64_t t) {
    if (t < 1) return 0;
    // i = floor((sqrt(8t+1)-1)/2), corrected for rounding
    auto i = static_cast<std::int64_t>((std::sqrt(8.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
    for (std::int64_t c = i > 1 ? i - 1 : 1; c <= i + 1; ++c)
        if (c * (c + 1) / 2 == t) return c;
    return 0;
}

inline bool shift_set_member(ShiftSet set, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("shift_set_member: t must be >= 1");
    const std::int64_t i = triangular_index(t);
    if (i == 0) return false;
    switch (set) {
        case ShiftSet::S1: return true;
        case ShiftSet::S2: return i % 3 == 1;
        case ShiftSet::S3: return i % 3 == 2;
    }
    return false;
}

/// Bit stream with bit at offset t equal to 1 iff t is in S1; offset 0 is 0.
inline std::vector<int> stream_prefix(std::int64_t len) {
    if (len < 1) throw std::invalid_argument("stream_prefix: len must be >= 1");
    std::vector<int> bits(static_cast<std::size_t>(len), 0);
    for (std::int64_t t = 1; t < len; ++t)
        bits[static_cast<std::size_t>(t)] = shift_set_member(ShiftSet::S1, t) ? 1 : 0;
    return bits;
}

}  // namespace sflab
