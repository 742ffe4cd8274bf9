#pragma once

// Classification of the reductions of a rational curve over a range of primes.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdrflow/ec/invariants.hpp"
#include "hdrflow/scan/rational_curve.hpp"
#include "hdrflow/util/parallel.hpp"

namespace hdrflow {

enum class PrimeStatus { Skipped, Bad, Ordinary, Supersingular };

constexpr std::string_view to_string(PrimeStatus s) noexcept
{
    switch (s) {
    case PrimeStatus::Skipped: return "skipped";
    case PrimeStatus::Bad: return "bad";
    case PrimeStatus::Ordinary: return "ordinary";
    case PrimeStatus::Supersingular: return "supersingular";
    }
    return "?";
}

struct PrimeRecord
{
    std::uint64_t p = 0;
    PrimeStatus status = PrimeStatus::Skipped;
    std::optional<std::int64_t> trace; // good primes
    std::string reason;                // skipped and bad primes

    friend bool operator==(const PrimeRecord &, const PrimeRecord &) = default;
};

struct ScanTotals
{
    std::uint64_t primes = 0, skipped = 0, bad = 0, good = 0, ordinary = 0, supersingular = 0;

    friend bool operator==(const ScanTotals &, const ScanTotals &) = default;
};

struct ScanReport
{
    std::string curve;
    std::uint64_t p_min = 0, p_max = 0;
    std::vector<PrimeRecord> records; // ascending p
    ScanTotals totals;
    std::vector<std::uint64_t> supersingular_primes;

    friend bool operator==(const ScanReport &, const ScanReport &) = default;
};

/// Classification of one prime.
inline PrimeRecord classify_prime(const RationalCurve &curve, std::uint64_t p)
{
    if (p < 5)
        return {p, PrimeStatus::Skipped, std::nullopt, "characteristic below 5"};
    auto reduced = reduce_mod_p(curve, p);
    if (auto *bad = std::get_if<BadReduction>(&reduced))
        return {p, PrimeStatus::Bad, std::nullopt, bad->reason};
    const Curve &E = std::get<Curve>(reduced);
    try {
        const GroupOrder n = count_points(E);
        const bool ss = n.trace % static_cast<std::int64_t>(p) == 0;
        return {p, ss ? PrimeStatus::Supersingular : PrimeStatus::Ordinary, n.trace, {}};
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::AmbiguousOrder)
            throw;
        // the Hasse invariant still decides the status without the trace
        const bool ss = is_supersingular_hasse(E);
        return {p, ss ? PrimeStatus::Supersingular : PrimeStatus::Ordinary, std::nullopt, "trace undetermined"};
    }
}

/// Every prime in [p_min, p_max]; p = 2, 3 are reported as skipped.
inline ScanReport scan(const RationalCurve &curve, std::uint64_t p_min, std::uint64_t p_max, unsigned workers = 1)
{
    if (p_max > kScanPrimeLimit)
        raise(ErrorKind::RangeTooLarge, "scan limited to p <= " + std::to_string(kScanPrimeLimit));
    if (p_min < 2 || p_min > p_max)
        raise(ErrorKind::UnsupportedRange, "scan needs 2 <= p_min <= p_max");
    const auto primes = nt::primes_in_range(p_min, p_max);

    ScanReport report;
    report.curve = curve.to_string();
    report.p_min = p_min;
    report.p_max = p_max;
    report.records = parallel_map(primes.size(), workers, [&](std::size_t i) { return classify_prime(curve, primes[i]); });

    ScanTotals &t = report.totals;
    for (const PrimeRecord &r : report.records) {
        ++t.primes;
        switch (r.status) {
        case PrimeStatus::Skipped: ++t.skipped; break;
        case PrimeStatus::Bad: ++t.bad; break;
        case PrimeStatus::Ordinary: ++t.good; ++t.ordinary; break;
        case PrimeStatus::Supersingular:
            ++t.good;
            ++t.supersingular;
            report.supersingular_primes.push_back(r.p);
            break;
        }
    }
    return report;
}

struct DensitySummary
{
    ScanTotals totals;
    std::optional<ExactRational> ratio; // supersingular / good, if any good prime
    double ratio_approx = 0.0;
    double normalized = 0.0;            // count / (sqrt(p_max) / log(p_max))
};

/// Heuristic statistics only; no theoretical claim is attached.
inline DensitySummary density_summary(const ScanReport &report)
{
    DensitySummary s;
    s.totals = report.totals;
    if (report.totals.good > 0) {
        s.ratio = ExactRational(ExactRational::Integer(report.totals.supersingular), ExactRational::Integer(report.totals.good));
        s.ratio_approx = static_cast<double>(report.totals.supersingular) / static_cast<double>(report.totals.good);
    }
    const double pm = static_cast<double>(report.p_max);
    if (pm > 1.0)
        s.normalized = static_cast<double>(report.totals.supersingular) / (std::sqrt(pm) / std::log(pm));
    return s;
}

} // namespace hdrflow
