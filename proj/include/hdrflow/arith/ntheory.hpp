#pragma once

// Word-size number theory: modular arithmetic, deterministic Miller-Rabin,
// Pollard-Brent factorisation, segmented sieving, multiplicative orders.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "hdrflow/error.hpp"

namespace hdrflow::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) noexcept
{
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

inline u64 isqrt(u64 n) noexcept
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

namespace detail {

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) noexcept
{
    a %= n;
    if (a == 0)
        return false;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true;
}

} // namespace detail

/// Deterministic for all 64-bit inputs.
inline bool is_prime(u64 n) noexcept
{
    if (n < 2)
        return false;
    for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0)
            return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // bases 2, 7, 61 are sufficient below 4759123141
    if (n < 4759123141ULL) {
        for (u64 a : {2u, 7u, 61u})
            if (detail::miller_rabin_witness(n, a, d, s))
                return false;
        return true;
    }
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
        if (detail::miller_rabin_witness(n, a, d, s))
            return false;
    return true;
}

namespace detail {

inline u64 pollard_brent(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        constexpr u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(u64 n, std::map<u64, int> &out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorisation as (prime, exponent) pairs in ascending order.
inline std::vector<std::pair<u64, int>> factor(u64 n)
{
    std::map<u64, int> acc;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        while (n > 1 && n % p == 0) {
            ++acc[p];
            n /= p;
        }
    }
    detail::factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

inline u64 lcm(u64 a, u64 b) noexcept { return a / std::gcd(a, b) * b; }

/// Smallest m >= 1 with base^m = 1 mod modulus; requires gcd(base, modulus) = 1.
inline u64 multiplicative_order(u64 base, u64 modulus)
{
    if (modulus == 1)
        return 1;
    if (std::gcd(base % modulus, modulus) != 1)
        raise(ErrorKind::UnsupportedRange, "multiplicative_order: base not a unit");
    u64 phi = modulus;
    for (auto [q, e] : factor(modulus))
        phi = phi / q * (q - 1);
    u64 order = phi;
    for (auto [q, e] : factor(phi)) {
        for (int i = 0; i < e && order % q == 0; ++i) {
            if (powmod(base, order / q, modulus) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

/// Positive divisors in ascending order.
inline std::vector<u64> divisors(u64 n)
{
    std::vector<u64> out{1};
    for (auto [q, e] : factor(n)) {
        std::size_t prev = out.size();
        u64 pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= q;
            for (std::size_t k = 0; k < prev; ++k)
                out.push_back(out[k] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All primes in [lo, hi], ascending (segmented sieve).
inline std::vector<u64> primes_in_range(u64 lo, u64 hi)
{
    std::vector<u64> out;
    if (hi < 2 || lo > hi)
        return out;
    lo = std::max<u64>(lo, 2);
    u64 root = isqrt(hi);
    std::vector<char> small(root + 1, 1);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (!small[i])
            continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += i)
            small[j] = 0;
    }
    constexpr u64 segment = 1 << 18;
    std::vector<char> mark;
    for (u64 start = lo; start <= hi; start += segment) {
        u64 stop = std::min(hi, start + segment - 1);
        mark.assign(stop - start + 1, 1);
        for (u64 q : base) {
            u64 first = std::max(q * q, (start + q - 1) / q * q);
            for (u64 j = first; j <= stop; j += q)
                mark[j - start] = 0;
        }
        for (u64 i = start; i <= stop; ++i)
            if (mark[i - start])
                out.push_back(i);
        if (stop == hi)
            break;
    }
    return out;
}

} // namespace hdrflow::nt
