#pragma once

// The module invariant suites at reduced ranges (p <= 61), fast enough for a
// packaging smoke test.

#include "hdrflow/cli/checks.hpp"
#include "hdrflow/io/reports.hpp"

namespace hdrflow {

inline constexpr std::uint64_t kSelftestPrimeLimit = 61;
inline constexpr std::uint64_t kSelftestSeed = 0x68647266ULL;

inline SelftestReport run_selftest(unsigned workers)
{
    const std::uint64_t pm = kSelftestPrimeLimit;
    SelftestReport r;
    r.checks.push_back(checks::oracle_agreement(5, pm, workers));
    r.checks.push_back(checks::eichler_deuring_mass(5, pm, workers));
    r.checks.push_back(checks::hasse_witt_divisor(pm));
    r.checks.push_back(checks::unif_dichotomy(5, pm, 20, kSelftestSeed, workers));
    r.checks.push_back(checks::line_flow(100, pm, kSelftestSeed));
    r.checks.push_back(checks::clump(5, pm, workers));
    r.checks.push_back(checks::cm_scan(5, pm, workers));
    r.checks.push_back(checks::shimura_identities(20, kSelftestSeed));
    r.checks.push_back(checks::cross_oracles(5, pm, 20, kSelftestSeed, workers));
    return r;
}

} // namespace hdrflow
