#pragma once

// Isomorphism invariants and the two supersingularity oracles: the trace of
// Frobenius and the Hasse invariant.

#include <cstdint>
#include <numeric>
#include <vector>

#include "hdrflow/ec/counting.hpp"
#include "hdrflow/ec/curve.hpp"

namespace hdrflow {

inline FqElement j_invariant(const Curve &E)
{
    const FieldDescriptor &F = E.field();
    if (const auto &lambda = E.legendre_parameter()) {
        // 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)
        const FqElement one = FqElement::from_int(F, 1);
        const FqElement l = *lambda;
        const FqElement s = l * l - l + one;
        const FqElement d = l * (l - one);
        return FqElement::from_int(F, 256) * s * s * s / (d * d);
    }
    const FqElement a3 = FqElement::from_int(F, 4) * E.a() * E.a() * E.a();
    const FqElement b2 = FqElement::from_int(F, 27) * E.b() * E.b();
    return FqElement::from_int(F, 1728) * a3 / (a3 + b2);
}

/// Standard representative: (0, 1) for j = 0, (1, 0) for j = 1728, otherwise
/// A = 3 j (1728 - j), B = 2 j (1728 - j)^2.
inline Curve curve_from_j(const FqElement &j)
{
    const FieldDescriptor &F = j.field();
    if (F.characteristic() < 5)
        raise(ErrorKind::SmallCharacteristic, "curve_from_j needs p >= 5");
    const FqElement k1728 = FqElement::from_int(F, 1728);
    if (j.is_zero())
        return Curve::weierstrass(FqElement(F), FqElement::from_int(F, 1));
    if (j == k1728)
        return Curve::weierstrass(FqElement::from_int(F, 1), FqElement(F));
    const FqElement c = k1728 - j;
    return Curve::weierstrass(FqElement::from_int(F, 3) * j * c, FqElement::from_int(F, 2) * j * c * c);
}

namespace detail {

// Coefficient of x^{p-1} in (x^3 + A x + B)^m, m = (p-1)/2, is
//   sum_i  m! / (i! j! k!)  A^j B^k   with  j = 2m - 3i,  k = 2i - m,
// over m/2 <= i <= 2m/3. These multinomials depend only on p.
struct HasseCoefficients
{
    std::uint64_t p = 0;
    std::uint64_t i_lo = 1, i_hi = 0;
    std::vector<std::uint64_t> by_i; // index i - i_lo
};

inline const HasseCoefficients &hasse_coefficients(std::uint64_t p)
{
    thread_local HasseCoefficients cache;
    if (cache.p == p)
        return cache;
    const std::uint64_t m = (p - 1) / 2;
    std::vector<std::uint64_t> fact(m + 1, 1), inv_fact(m + 1, 1);
    for (std::uint64_t i = 1; i <= m; ++i)
        fact[i] = nt::mulmod(fact[i - 1], i, p);
    inv_fact[m] = nt::powmod(fact[m], p - 2, p);
    for (std::uint64_t i = m; i > 0; --i)
        inv_fact[i - 1] = nt::mulmod(inv_fact[i], i, p);
    HasseCoefficients c;
    c.p = p;
    c.i_lo = (m + 1) / 2;
    c.i_hi = 2 * m / 3;
    for (std::uint64_t i = c.i_lo; i <= c.i_hi; ++i) {
        const std::uint64_t j = 2 * m - 3 * i, k = 2 * i - m;
        c.by_i.push_back(nt::mulmod(nt::mulmod(fact[m], inv_fact[i], p), nt::mulmod(inv_fact[j], inv_fact[k], p), p));
    }
    cache = std::move(c);
    return cache;
}

} // namespace detail

/// Coefficient of x^{p-1} in (x^3 + A x + B)^{(p-1)/2} on the Weierstrass
/// model; it vanishes exactly on supersingular curves.
inline FqElement hasse_invariant(const Curve &E)
{
    const FieldDescriptor &F = E.field();
    const std::uint64_t p = F.characteristic();
    if (p < 5)
        raise(ErrorKind::SmallCharacteristic, "Hasse invariant needs p >= 5");
    const auto &c = detail::hasse_coefficients(p);
    if (c.i_lo > c.i_hi)
        return FqElement(F);
    const std::uint64_t m = (p - 1) / 2;
    const std::uint64_t T = c.i_hi - c.i_lo;
    // t = i_hi - i: A-exponent j0 + 3t, B-exponent k0 - 2t; Horner in (A^3, B^2)
    const FqElement X = E.a() * E.a() * E.a(), Y = E.b() * E.b();
    auto coeff = [&](std::uint64_t t) { return FqElement::from_int(F, static_cast<std::int64_t>(c.by_i[T - t])); };
    FqElement s = coeff(T), ypow = Y;
    for (std::uint64_t t = T; t-- > 0;) {
        s = s * X + coeff(t) * ypow;
        ypow *= Y;
    }
    const std::uint64_t j0 = 2 * m - 3 * c.i_hi, k_min = 2 * c.i_lo - m;
    return s * E.a().pow(j0) * E.b().pow(k_min);
}

/// p | a, with a the trace over the curve's own field.
inline bool is_supersingular_trace(const Curve &E)
{
    const GroupOrder n = count_points(E);
    return n.trace % static_cast<std::int64_t>(E.field().characteristic()) == 0;
}

inline bool is_supersingular_hasse(const Curve &E) { return hasse_invariant(E).is_zero(); }

/// The trace criterion over F_p, the Hasse invariant over proper extensions.
inline bool is_supersingular(const Curve &E)
{
    return E.field().is_prime_field() ? is_supersingular_trace(E) : is_supersingular_hasse(E);
}

/// #{u in F_{p^2} : u^4 A = A, u^6 B = B}: the roots of unity of order
/// dividing 4 (B = 0), 6 (A = 0) or 2 (otherwise), all of which lie in F_{p^2}.
inline int automorphism_order(const Curve &E)
{
    const std::uint64_t p = E.field().characteristic();
    if (p < 5)
        raise(ErrorKind::SmallCharacteristic, "automorphism_order needs p >= 5");
    std::uint64_t d = 2;
    if (E.b().is_zero())
        d = 4;
    else if (E.a().is_zero())
        d = 6;
    return static_cast<int>(std::gcd(d, p * p - 1));
}

} // namespace hdrflow
