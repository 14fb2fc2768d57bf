#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the library code paths they are compared against.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> trial_factor(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
    }
    return r;
}

// Euler's criterion, p an odd prime below 2^32.
inline int euler_legendre(std::int64_t a, std::uint64_t p) {
    std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                                 static_cast<std::int64_t>(p));
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// +1 if a is a fourth power mod p, -1 otherwise (a must be a nonzero square).
inline int fourth_power_search(std::int64_t a, std::uint64_t p) {
    std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                                 static_cast<std::int64_t>(p));
    for (std::uint64_t x = 1; x < p; ++x) {
        if (x * x % p * x % p * x % p == r) return 1;
    }
    return -1;
}

// All (b, c), b even, c odd, with b^2 + c^2 = n.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> two_squares_search(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t b = 2; b * b < n; b += 2) {
        std::uint64_t rest = n - b * b;
        auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
        while (c * c > rest) --c;
        while ((c + 1) * (c + 1) <= rest) ++c;
        if (c * c == rest && c % 2 == 1) out.emplace_back(b, c);
    }
    return out;
}

inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    if (r * r == x) return r;
    return std::nullopt;
}

// Smallest v > 0 (up to v_cap) with ell*v^2 - 4 a perfect square u^2.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pell_minus_four(std::uint64_t ell, std::uint64_t v_cap) {
    for (std::uint64_t v = 1; v <= v_cap; ++v) {
        if (auto u = exact_sqrt(ell * v * v - 4)) return std::make_pair(*u, v);
    }
    return std::nullopt;
}

}  // namespace oracle
