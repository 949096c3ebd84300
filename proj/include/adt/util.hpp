#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace adt {

using i64 = long long;

class error : public std::runtime_error {
  public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw error("integer overflow in addition");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error("integer overflow in multiplication");
    return r;
}

inline int sign_pow(i64 n) {
    // (-1)^n for possibly negative n
    return (n % 2 == 0) ? 1 : -1;
}

using Rng = std::mt19937_64;

inline i64 rand_range(Rng& rng, i64 lo, i64 hi) {
    std::uniform_int_distribution<i64> d(lo, hi);
    return d(rng);
}

// FNV-1a, used for input hashes in run reports
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace adt
