#pragma once

// Supersingular j-invariants in characteristic p, the Deuring polynomial of the
// Legendre family, and the Eichler-Deuring and Shimura mass formulas.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hdrflow/arith/poly.hpp"
#include "hdrflow/arith/rational.hpp"
#include "hdrflow/ec/invariants.hpp"
#include "hdrflow/util/parallel.hpp"

namespace hdrflow {

inline constexpr std::uint64_t kLocusPrimeLimit = 2000;

struct SupersingularLocus
{
    std::uint64_t p = 0;
    Field field;                       // F_{p^2}
    std::vector<FqElement> j_values;   // ascending (c0, c1)
    std::vector<int> aut_orders;       // parallel to j_values

    std::size_t size() const noexcept { return j_values.size(); }

    bool contains(const FqElement &j) const { return std::binary_search(j_values.begin(), j_values.end(), j); }

    friend bool operator==(const SupersingularLocus &x, const SupersingularLocus &y)
    {
        return x.p == y.p && x.j_values == y.j_values && x.aut_orders == y.aut_orders;
    }
};

namespace detail {

inline void check_locus_prime(std::uint64_t p)
{
    if (p < 5)
        raise(ErrorKind::SmallCharacteristic, "supersingular locus needs p >= 5");
    if (p >= kLocusPrimeLimit)
        raise(ErrorKind::RangeTooLarge, "supersingular enumeration limited to p < " + std::to_string(kLocusPrimeLimit));
    if (!nt::is_prime(p))
        raise(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
}

inline FqElement legendre_j(const FqElement &l)
{
    const FqElement one = FqElement::from_int(l.field(), 1);
    const FqElement s = l * l - l + one;
    const FqElement d = l * (l - one);
    return FqElement::from_int(l.field(), 256) * s * s * s / (d * d);
}

} // namespace detail

/// H_p(l) = sum_{i=0}^{m} C(m, i)^2 l^i over F_p with m = (p - 1) / 2.
inline Poly deuring_polynomial(std::uint64_t p)
{
    if (p < 3 || p % 2 == 0)
        raise(ErrorKind::UnsupportedRange, "Deuring polynomial needs an odd prime");
    const Field F = make_field(p, 1);
    const std::uint64_t m = (p - 1) / 2;
    std::vector<FqElement> c;
    c.reserve(m + 1);
    std::uint64_t binom = 1; // C(m, i) mod p; exact since m < p
    for (std::uint64_t i = 0; i <= m; ++i) {
        c.push_back(FqElement::from_int(*F, static_cast<std::int64_t>(nt::mulmod(binom, binom, p))));
        binom = nt::mulmod(nt::mulmod(binom, m - i, p), nt::powmod(i + 1, p - 2, p), p);
    }
    return Poly(*F, std::move(c));
}

/// Supersingular j in F_{p^2} by testing the Hasse invariant of every curve_from_j(j).
inline ElementList supersingular_j_by_sweep(std::uint64_t p, unsigned workers = 1)
{
    detail::check_locus_prime(p);
    const Field F2 = make_field(p, 2);
    const std::uint64_t q = *F2->order_u64();
    const std::uint64_t chunk = 1024;
    const std::size_t chunks = static_cast<std::size_t>((q + chunk - 1) / chunk);
    auto parts = parallel_map(chunks, workers, [&](std::size_t c) {
        std::vector<FqElement> found;
        for (std::uint64_t i = c * chunk; i < std::min(q, (c + 1) * chunk); ++i) {
            const FqElement j = FqElement::from_index(*F2, i);
            if (is_supersingular_hasse(curve_from_j(j)))
                found.push_back(j);
        }
        return found;
    });
    ElementList out{F2, {}};
    for (auto &part : parts)
        out.values.insert(out.values.end(), part.begin(), part.end());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

/// Supersingular j in F_{p^2} as the Legendre images of the roots of H_p.
inline ElementList supersingular_j_by_deuring(std::uint64_t p)
{
    detail::check_locus_prime(p);
    const Field F2 = make_field(p, 2);
    ElementList out{F2, {}};
    for (const auto &[lambda, mult] : roots_in_fq(deuring_polynomial(p).lift_to(*F2)))
        out.values.push_back(detail::legendre_j(lambda));
    std::sort(out.values.begin(), out.values.end());
    out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
    return out;
}

/// The supersingular locus, cross-checked against the Deuring polynomial.
inline SupersingularLocus enumerate_supersingular(std::uint64_t p, unsigned workers = 1)
{
    SupersingularLocus locus;
    locus.p = p;
    ElementList sweep = supersingular_j_by_sweep(p, workers);
    locus.field = sweep.field;
    locus.j_values = std::move(sweep.values);
    if (locus.j_values != supersingular_j_by_deuring(p).values)
        raise(ErrorKind::ValidationFailed, "j-sweep and Deuring roots disagree at p = " + std::to_string(p));
    const std::uint64_t lo = p / 12;
    if (locus.size() < lo || locus.size() > lo + 2)
        raise(ErrorKind::ValidationFailed, "supersingular count outside the mass bracket at p = " + std::to_string(p));
    for (const FqElement &j : locus.j_values)
        locus.aut_orders.push_back(automorphism_order(curve_from_j(j)));
    return locus;
}

struct HasseWittCheck
{
    std::uint64_t p = 0;
    bool squarefree = false;
    int degree = 0;
    int expected_degree = 0;
    bool constant_term_one = false;

    bool pass() const noexcept { return squarefree && degree == expected_degree && constant_term_one; }

    friend bool operator==(const HasseWittCheck &, const HasseWittCheck &) = default;
};

inline HasseWittCheck hasse_witt_divisor_check(std::uint64_t p)
{
    const Poly h = deuring_polynomial(p);
    HasseWittCheck r;
    r.p = p;
    r.squarefree = squarefree_test(h);
    r.degree = h.degree();
    r.expected_degree = static_cast<int>((p - 1) / 2);
    r.constant_term_one = h.coeff(0).is_one();
    return r;
}

struct MassReport
{
    std::uint64_t p = 0;
    std::size_t locus_size = 0;
    ExactRational mass;
    ExactRational expected;
    bool pass = false;

    friend bool operator==(const MassReport &, const MassReport &) = default;
};

/// sum over supersingular j of 1 / #Aut against (p - 1) / 24, exactly.
inline MassReport mass_check(std::uint64_t p, unsigned workers = 1)
{
    const SupersingularLocus locus = enumerate_supersingular(p, workers);
    MassReport r;
    r.p = p;
    r.locus_size = locus.size();
    for (int a : locus.aut_orders)
        r.mass += ExactRational(1, a);
    r.expected = ExactRational(static_cast<long long>(p) - 1, 24);
    r.pass = r.mass == r.expected;
    return r;
}

struct ShimuraMass
{
    std::uint64_t p = 0;
    int f = 0, g = 0;
    BigInt q;                    // p^f
    BigInt mass;                 // (q - 1)(g - 1)
    BigInt euler_characteristic; // 2 - 2g
    BigInt euler_form;           // (1 - q) chi / 2
    BigInt hasse_witt_degree;    // deg L^{q-1} with deg L = g - 1
    bool euler_identity = false;
    bool degree_identity = false;

    bool pass() const noexcept { return euler_identity && degree_identity; }

    friend bool operator==(const ShimuraMass &, const ShimuraMass &) = default;
};

inline constexpr int kShimuraMaxDegree = 64;

/// |N_p| = (p^f - 1)(g - 1), with the Euler-characteristic and Hasse-Witt
/// degree forms of the same count.
inline ShimuraMass shimura_mass(std::uint64_t p, int f, int g)
{
    if (g < 2)
        raise(ErrorKind::InvalidGenus, "genus must be >= 2, got " + std::to_string(g));
    if (f < 1 || f > kShimuraMaxDegree)
        raise(ErrorKind::UnsupportedRange, "f must lie in [1, " + std::to_string(kShimuraMaxDegree) + "]");
    if (!nt::is_prime(p))
        raise(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
    ShimuraMass r;
    r.p = p;
    r.f = f;
    r.g = g;
    r.q = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(f));
    r.mass = (r.q - 1) * (g - 1);
    r.euler_characteristic = BigInt(2) - 2 * g;
    r.euler_form = (1 - r.q) * r.euler_characteristic / 2;
    r.hasse_witt_degree = (r.q - 1) * BigInt(g - 1);
    r.euler_identity = r.euler_form == r.mass;
    r.degree_identity = r.hasse_witt_degree == r.mass;
    return r;
}

} // namespace hdrflow
