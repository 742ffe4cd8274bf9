#pragma once

// Range-parameterised invariant checks shared by the selftest subcommand and
// the acceptance suite. Each check is deterministic for a given seed and does
// not depend on the worker count.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hdrflow/flow/engine.hpp"
#include "hdrflow/hecke/isogeny_graph.hpp"
#include "hdrflow/locus/supersingular_locus.hpp"
#include "hdrflow/scan/scanner.hpp"
#include "hdrflow/util/parallel.hpp"

namespace hdrflow {

struct CheckResult
{
    std::string name;
    bool pass = false;
    std::string detail;

    friend bool operator==(const CheckResult &, const CheckResult &) = default;
};

namespace checks {

namespace detail {

template <class Rng>
Curve random_curve(const FieldDescriptor &F, Rng &rng)
{
    while (true) {
        const FqElement a = FqElement::random(F, rng), b = FqElement::random(F, rng);
        if (!(FqElement::from_int(F, 4) * a * a * a + FqElement::from_int(F, 27) * b * b).is_zero())
            return Curve::weierstrass(a, b);
    }
}

/// Least m <= bound with [p^m]P = P by repeated multiplication, or 0.
inline std::uint64_t iterate_line_period(const Point &P, std::uint64_t bound)
{
    const auto p = static_cast<std::int64_t>(P.curve().field().characteristic());
    Point Q = P;
    for (std::uint64_t m = 1; m <= bound; ++m) {
        Q = Q.times(p);
        if (Q == P)
            return m;
    }
    return 0;
}

inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi)
{
    return lo > hi ? std::vector<std::uint64_t>{} : nt::primes_in_range(lo, hi);
}

} // namespace detail

/// Trace and Hasse classifications agree on every nonsingular y^2 = x^3 + A x + B
/// over F_p for the primes in [p_min, p_max].
inline CheckResult oracle_agreement(std::uint64_t p_min, std::uint64_t p_max, unsigned workers)
{
    struct Cell
    {
        std::uint64_t curves = 0, supersingular = 0, disagreements = 0;
    };
    struct Task
    {
        std::uint64_t p, a;
    };
    std::vector<Task> tasks;
    for (std::uint64_t p : detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max))
        for (std::uint64_t a = 0; a < p; ++a)
            tasks.push_back({p, a});
    const auto cells = parallel_map(tasks.size(), workers, [&](std::size_t i) {
        const auto [p, a] = tasks[i];
        const Field F = make_field(p, 1);
        const FqElement A = FqElement::from_int(*F, static_cast<std::int64_t>(a));
        Cell c;
        for (std::uint64_t b = 0; b < p; ++b) {
            if ((4 * a % p * a % p * a + 27 * b % p * b) % p == 0)
                continue;
            const Curve E = Curve::weierstrass(A, FqElement::from_int(*F, static_cast<std::int64_t>(b)));
            const bool by_trace = is_supersingular_trace(E), by_hasse = is_supersingular_hasse(E);
            ++c.curves;
            c.supersingular += by_trace;
            c.disagreements += by_trace != by_hasse;
        }
        return c;
    });
    Cell total;
    for (const Cell &c : cells) {
        total.curves += c.curves;
        total.supersingular += c.supersingular;
        total.disagreements += c.disagreements;
    }
    return {"oracle-agreement", total.disagreements == 0 && total.curves > 0,
            std::to_string(total.curves) + " curves, " + std::to_string(total.supersingular) + " supersingular, " +
                std::to_string(total.disagreements) + " disagreements"};
}

/// Sum of 1/#Aut over the supersingular locus equals (p - 1)/24 exactly.
inline CheckResult eichler_deuring_mass(std::uint64_t p_min, std::uint64_t p_max, unsigned workers)
{
    std::uint64_t primes = 0;
    std::vector<std::uint64_t> failed;
    for (std::uint64_t p : detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max)) {
        ++primes;
        if (!mass_check(p, workers).pass)
            failed.push_back(p);
    }
    std::string detail = std::to_string(primes) + " primes, " + std::to_string(failed.size()) + " mismatches";
    if (!failed.empty())
        detail += ", first at p = " + std::to_string(failed.front());
    return {"eichler-deuring-mass", failed.empty() && primes > 0, detail};
}

/// H_p is squarefree of degree (p - 1)/2 with constant term 1 for odd p.
inline CheckResult hasse_witt_divisor(std::uint64_t p_max)
{
    std::uint64_t primes = 0;
    std::vector<std::uint64_t> failed;
    for (std::uint64_t p : detail::primes_between(3, p_max)) {
        ++primes;
        if (!hasse_witt_divisor_check(p).pass())
            failed.push_back(p);
    }
    std::string detail = std::to_string(primes) + " odd primes, " + std::to_string(failed.size()) + " failures";
    if (!failed.empty())
        detail += ", first at p = " + std::to_string(failed.front());
    return {"hasse-witt-divisor", failed.empty() && primes > 0, detail};
}

/// The uniformizing state is Periodic(1) on ordinary curves and
/// NonPeriodic(SupersingularDegeneration) on supersingular ones.
inline CheckResult unif_dichotomy(std::uint64_t p_min, std::uint64_t p_max, int curves_per_prime, std::uint64_t seed,
                                  unsigned workers)
{
    struct Cell
    {
        std::uint64_t ordinary = 0, supersingular = 0, mismatches = 0, oracle_splits = 0;
    };
    const auto primes = detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max);
    const auto cells = parallel_map(primes.size(), workers, [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        const Field F = make_field(p, 1);
        std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
        Cell c;
        for (int t = 0; t < curves_per_prime; ++t) {
            const Curve E = detail::random_curve(*F, rng);
            const bool by_trace = is_supersingular_trace(E), by_hasse = is_supersingular_hasse(E);
            if (by_trace != by_hasse) {
                ++c.oracle_splits;
                continue;
            }
            const Verdict v = decide_periodicity(HiggsState(E, {Block::unif()}), E).verdict;
            const Verdict expected = by_trace ? Verdict::non_periodic(NonPeriodicReason::SupersingularDegeneration)
                                              : Verdict::periodic(1);
            (by_trace ? c.supersingular : c.ordinary) += 1;
            c.mismatches += v != expected;
        }
        return c;
    });
    Cell total;
    for (const Cell &c : cells) {
        total.ordinary += c.ordinary;
        total.supersingular += c.supersingular;
        total.mismatches += c.mismatches;
        total.oracle_splits += c.oracle_splits;
    }
    return {"unif-dichotomy", total.mismatches == 0 && total.oracle_splits == 0 && total.ordinary > 0,
            std::to_string(total.ordinary) + " ordinary, " + std::to_string(total.supersingular) + " supersingular, " +
                std::to_string(total.mismatches) + " mismatches, " + std::to_string(total.oracle_splits) + " oracle splits"};
}

/// Line-bundle periods from the engine against direct iteration of [p]. Every
/// tenth case is drawn from a curve with p | #E and a point of order divisible
/// by p, so the p-torsion branch is always exercised.
inline CheckResult line_flow(int cases, std::uint64_t p_max, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto primes = detail::primes_between(5, p_max);
    std::uint64_t periodic = 0, p_torsion = 0, mismatches = 0;
    std::string first_failure;
    for (int t = 0; t < cases; ++t) {
        const bool want_p_torsion = t % 10 == 9;
        std::optional<Point> P;
        while (!P) {
            const std::uint64_t p = primes[rng() % primes.size()];
            const Field F = make_field(p, 1);
            const Curve E = detail::random_curve(*F, rng);
            if (want_p_torsion && count_points(E).order % p != 0)
                continue;
            for (int tries = 0; tries < 8 && !P; ++tries) {
                const Point Q = E.random_point(rng);
                if (Q.is_infinity())
                    continue;
                if (!want_p_torsion || point_order(Q) % p == 0)
                    P = Q;
            }
        }
        const std::uint64_t p = P->curve().field().characteristic();
        const std::uint64_t order = point_order(*P);
        const Verdict v = decide_periodicity(HiggsState(P->curve(), {Block::line(*P)}), P->curve()).verdict;
        const std::uint64_t iterated = detail::iterate_line_period(*P, order);
        bool ok;
        if (order % p == 0) {
            ++p_torsion;
            ok = v == Verdict::non_periodic(NonPeriodicReason::PTorsionEscape) && iterated == 0;
        } else {
            ++periodic;
            const std::uint64_t analytic = nt::multiplicative_order(p % order, order);
            ok = v == Verdict::periodic(analytic) && iterated == analytic;
        }
        if (!ok) {
            ++mismatches;
            if (first_failure.empty())
                first_failure = ", first: " + P->curve().describe() + " verdict " + v.to_string();
        }
    }
    return {"line-flow", mismatches == 0 && periodic > 0 && p_torsion > 0,
            std::to_string(cases) + " cases, " + std::to_string(periodic) + " periodic, " + std::to_string(p_torsion) +
                " p-torsion, " + std::to_string(mismatches) + " mismatches" + first_failure};
}

/// The supersingular set is closed and (l+1)-regular under Phi_l for l = 2, 3.
inline CheckResult clump(std::uint64_t p_min, std::uint64_t p_max, unsigned workers)
{
    std::uint64_t graphs = 0, connected = 0;
    std::vector<std::string> failed;
    for (std::uint64_t p : detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max)) {
        const SupersingularLocus locus = enumerate_supersingular(p, workers);
        for (int l : {2, 3}) {
            const ClumpReport r = verify_clump(build_isogeny_graph(locus, l, workers));
            ++graphs;
            connected += r.connected;
            if (!r.closed || !r.regular)
                failed.push_back(std::to_string(p) + "/" + std::to_string(l));
        }
    }
    std::string detail = std::to_string(graphs) + " graphs, " + std::to_string(failed.size()) + " not closed or regular, " +
                         std::to_string(connected) + " connected";
    if (!failed.empty())
        detail += ", first p/l = " + failed.front();
    return {"clump", failed.empty() && graphs > 0, detail};
}

/// CM congruences: Legendre t = 2 is supersingular exactly at p = 3 mod 4 and
/// y^2 = x^3 + 1 exactly at p = 2 mod 3.
inline CheckResult cm_scan(std::uint64_t p_min, std::uint64_t p_max, unsigned workers)
{
    auto expected = [&](std::uint64_t m, std::uint64_t r) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t p : detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max))
            if (p % m == r)
                out.push_back(p);
        return out;
    };
    const ScanReport t2 = scan(RationalCurve::legendre(ExactRational(2)), p_min, p_max, workers);
    const ScanReport j0 = scan(RationalCurve::weierstrass(ExactRational(0), ExactRational(1)), p_min, p_max, workers);
    const bool ok2 = t2.supersingular_primes == expected(4, 3);
    const bool ok0 = j0.supersingular_primes == expected(3, 2);
    return {"cm-scan", ok2 && ok0,
            "legendre:2 " + std::to_string(t2.supersingular_primes.size()) + " supersingular (" +
                (ok2 ? "= p = 3 mod 4" : "differs from p = 3 mod 4") + "), weier:0,1 " +
                std::to_string(j0.supersingular_primes.size()) + " supersingular (" +
                (ok0 ? "= p = 2 mod 3" : "differs from p = 2 mod 3") + ")"};
}

/// (p^f - 1)(g - 1) = (1 - p^f)(2 - 2g)/2 on random (p, f, g), with the
/// count recomputed here by repeated multiplication.
inline CheckResult shimura_identities(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto primes = nt::primes_in_range(2, 1000);
    int failures = 0;
    for (int t = 0; t < cases; ++t) {
        const std::uint64_t p = primes[rng() % primes.size()];
        const int f = 1 + static_cast<int>(rng() % 12);
        const int g = 2 + static_cast<int>(rng() % 200);
        const ShimuraMass r = shimura_mass(p, f, g);
        BigInt q = 1;
        for (int i = 0; i < f; ++i)
            q *= p;
        const BigInt lhs = (q - 1) * (g - 1);
        const BigInt rhs = (1 - q) * (2 - 2 * BigInt(g)) / 2;
        if (!r.pass() || r.mass != lhs || lhs != rhs || r.q != q)
            ++failures;
    }
    return {"shimura-identities", failures == 0,
            std::to_string(cases) + " triples, " + std::to_string(failures) + " failures"};
}

/// The j-sweep equals the Deuring-root image for each prime, and Velu
/// codomains are roots of Phi_l(j(E), Y).
inline CheckResult cross_oracles(std::uint64_t p_min, std::uint64_t p_max, int velu_cases, std::uint64_t seed,
                                 unsigned workers)
{
    std::uint64_t primes = 0;
    std::vector<std::uint64_t> sweep_failed;
    for (std::uint64_t p : detail::primes_between(std::max<std::uint64_t>(p_min, 5), p_max)) {
        ++primes;
        if (supersingular_j_by_sweep(p, workers) != supersingular_j_by_deuring(p))
            sweep_failed.push_back(p);
    }
    std::mt19937_64 rng(seed);
    const auto velu_primes = nt::primes_in_range(5, 600);
    int checked = 0, velu_failed = 0;
    for (int t = 0; checked < velu_cases; ++t) {
        const Field F = make_field(velu_primes[rng() % velu_primes.size()], 1);
        const Curve E = detail::random_curve(*F, rng);
        const int l = 2 + t % 2;
        const ElementList codomains = velu_isogenous_j(E, l);
        for (const FqElement &j2 : codomains) {
            if (checked == velu_cases)
                break;
            ++checked;
            if (!modular_polynomial(l)(j_invariant(E).lift_to(*codomains.field), j2).is_zero())
                ++velu_failed;
        }
    }
    return {"cross-oracles", sweep_failed.empty() && velu_failed == 0 && primes > 0,
            std::to_string(primes) + " primes, " + std::to_string(sweep_failed.size()) + " sweep/Deuring mismatches, " +
                std::to_string(checked) + " Velu codomains, " + std::to_string(velu_failed) + " not Phi_l roots"};
}

} // namespace checks

} // namespace hdrflow
