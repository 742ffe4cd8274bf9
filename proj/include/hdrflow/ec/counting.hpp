#pragma once

// #E(F_q): exhaustive character sums for q <= 2^20, baby-step giant-step in
// the Hasse interval above that. Results are cached on the curve.

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "hdrflow/arith/ntheory.hpp"
#include "hdrflow/ec/curve.hpp"

namespace hdrflow {

enum class CountMethod { Auto, Exhaustive, BabyStepGiantStep };

inline constexpr std::uint64_t kExhaustiveCountLimit = 1ULL << 20;
inline constexpr int kOrderSampleBudget = 16;

namespace detail {

inline std::uint64_t counting_field_order(const Curve &E)
{
    if (E.field().characteristic() < 5)
        raise(ErrorKind::SmallCharacteristic, "point counting needs p >= 5");
    auto q = E.field().order_u64();
    if (!q)
        raise(ErrorKind::UnsupportedRange, "point counting limited to q < 2^62, got " + E.field().describe());
    return *q;
}

inline std::uint64_t count_exhaustive(const Curve &E)
{
    const FieldDescriptor &F = E.field();
    const auto &squares = F.square_table();
    std::uint64_t n = 1;
    if (F.is_prime_field()) {
        // walk f(x) = x^3 + A x + B by finite differences
        const std::uint64_t p = F.characteristic();
        std::uint64_t fx = E.b().coeff(0), d1 = (1 + E.a().coeff(0)) % p, d2 = 6 % p;
        const std::uint64_t six = 6 % p;
        for (std::uint64_t x = 0; x < p; ++x) {
            n += fx == 0 ? 1 : (squares[fx] ? 2 : 0);
            fx += d1;
            if (fx >= p)
                fx -= p;
            d1 += d2;
            if (d1 >= p)
                d1 -= p;
            d2 += six;
            if (d2 >= p)
                d2 -= p;
        }
        return n;
    }
    const std::uint64_t q = *F.order_u64();
    for (std::uint64_t i = 0; i < q; ++i) {
        const FqElement r = E.rhs(FqElement::from_index(F, i));
        n += r.is_zero() ? 1 : (squares[r.index()] ? 2 : 0);
    }
    return n;
}

inline std::uint64_t seed_for(const Curve &E)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ E.field().characteristic();
    h = h * 31 + static_cast<std::uint64_t>(E.field().degree());
    for (int i = 0; i < E.field().degree(); ++i)
        h = (h ^ E.a().coeff(i)) * 0x100000001b3ULL + E.b().coeff(i);
    return h;
}

/// Exact order of P given any positive multiple of it.
inline std::uint64_t order_from_multiple(const FqElement &A, const Affine &P, std::uint64_t multiple)
{
    std::uint64_t order = multiple;
    for (auto [l, e] : nt::factor(multiple)) {
        for (int i = 0; i < e; ++i) {
            if (affine_mul(A, P, order / l).infinity)
                order /= l;
            else
                break;
        }
    }
    return order;
}

/// Order of P, located by a baby-step giant-step search over [lo, hi]
/// (which must contain a multiple of the order).
inline std::uint64_t order_in_interval(const FqElement &A, const Affine &P, std::uint64_t lo, std::uint64_t hi)
{
    if (P.infinity)
        return 1;
    const std::uint64_t m = nt::isqrt(hi - lo) + 1;
    std::vector<Affine> baby;
    baby.reserve(m + 1);
    std::unordered_map<std::uint64_t, std::uint64_t> by_x;
    baby.push_back(Affine::at_infinity(A.field()));
    Affine jP = P;
    for (std::uint64_t j = 1; j <= m; ++j) {
        if (jP.infinity)
            return order_from_multiple(A, P, j);
        auto [it, inserted] = by_x.emplace(jP.x.index(), j);
        if (!inserted) {
            // jP = +-(it->second)P
            const Affine &prev = baby[it->second];
            std::uint64_t multiple = prev.y == jP.y ? j - it->second : j + it->second;
            return order_from_multiple(A, P, multiple);
        }
        baby.push_back(jP);
        jP = affine_add(A, jP, P);
    }
    const Affine giant = affine_mul(A, P, m);
    Affine R = affine_mul(A, P, lo);
    for (std::uint64_t n = lo; n <= hi + m; n += m) {
        if (R.infinity)
            return order_from_multiple(A, P, n);
        if (auto it = by_x.find(R.x.index()); it != by_x.end()) {
            const std::uint64_t j = it->second;
            // R = -jP  =>  (n + j)P = O;  R = jP  =>  (n - j)P = O
            const std::uint64_t multiple = R.y == baby[j].y ? (n > j ? n - j : j - n) : n + j;
            if (multiple != 0)
                return order_from_multiple(A, P, multiple);
        }
        R = affine_add(A, R, giant);
    }
    raise(ErrorKind::AmbiguousOrder, "no multiple of the point order found in the Hasse interval");
}

inline std::vector<std::uint64_t> multiples_in(std::uint64_t d, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = (lo + d - 1) / d * d; n <= hi; n += d)
        out.push_back(n);
    return out;
}

inline std::uint64_t count_bsgs(const Curve &E)
{
    const std::uint64_t q = counting_field_order(E);
    const std::uint64_t width = nt::isqrt(4 * q);
    const std::uint64_t lo = q + 1 - width, hi = q + 1 + width;
    std::mt19937_64 rng(seed_for(E));

    std::uint64_t annihilator = 1;
    std::vector<std::uint64_t> candidates;
    for (int s = 0; s < kOrderSampleBudget; ++s) {
        const Point P = E.random_point(rng);
        annihilator = nt::lcm(annihilator, order_in_interval(E.a(), P.affine(), lo, hi));
        candidates = multiples_in(annihilator, lo, hi);
        if (candidates.size() == 1)
            return candidates.front();
    }

    // #E + #E' = 2q + 2 for the quadratic twist E'
    FqElement d = FqElement::from_int(E.field(), 2);
    for (std::uint64_t idx = 2; d.is_square(); ++idx)
        d = FqElement::from_index(E.field(), idx);
    const Curve twist = E.quadratic_twist(d);
    std::uint64_t twist_annihilator = 1;
    for (int s = 0; s < kOrderSampleBudget; ++s) {
        const Point P = twist.random_point(rng);
        twist_annihilator = nt::lcm(twist_annihilator, order_in_interval(twist.a(), P.affine(), lo, hi));
        std::vector<std::uint64_t> both;
        for (auto n : candidates)
            if ((2 * q + 2 - n) % twist_annihilator == 0)
                both.push_back(n);
        if (both.size() == 1)
            return both.front();
    }
    raise(ErrorKind::AmbiguousOrder, "group order of " + E.describe() + " not determined by " +
                                         std::to_string(kOrderSampleBudget) + " samples on the curve and its twist");
}

} // namespace detail

/// N = #E(F_q) and trace a = q + 1 - N.
inline GroupOrder count_points(const Curve &E, CountMethod method = CountMethod::Auto)
{
    const std::uint64_t q = detail::counting_field_order(E);
    if (method == CountMethod::Auto)
        if (auto cached = E.cached_order())
            return *cached;
    if (method == CountMethod::Exhaustive && q > kExhaustiveCountLimit)
        raise(ErrorKind::UnsupportedRange, "exhaustive counting limited to q <= 2^20");
    const bool exhaustive =
        method == CountMethod::Exhaustive || (method == CountMethod::Auto && q <= kExhaustiveCountLimit);
    const std::uint64_t n = exhaustive ? detail::count_exhaustive(E) : detail::count_bsgs(E);
    GroupOrder result{n, static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(n)};
    if (static_cast<__int128>(result.trace) * result.trace > static_cast<__int128>(4) * q)
        raise(ErrorKind::ValidationFailed, "Hasse bound violated for " + E.describe());
    E.store_order(result);
    return result;
}

/// Exact order of P, from the factorisation of #E.
inline std::uint64_t point_order(const Point &P)
{
    const GroupOrder n = count_points(P.curve());
    return detail::order_from_multiple(P.curve().a(), P.affine(), n.order);
}

} // namespace hdrflow
