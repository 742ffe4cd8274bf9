#pragma once

// Payloads produced by the command-line subcommands. Each wraps the module
// reports it aggregates and says whether all contained checks passed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hdrflow/cli/checks.hpp"
#include "hdrflow/flow/engine.hpp"
#include "hdrflow/hecke/isogeny_graph.hpp"
#include "hdrflow/locus/supersingular_locus.hpp"
#include "hdrflow/scan/scanner.hpp"

namespace hdrflow {

struct FlowReport
{
    std::uint64_t p = 0;
    int f = 1;
    std::string curve;              // the literal as given
    std::string state;              // initial state
    bool ordinary = false;
    int max_steps = kDefaultMaxSteps;
    std::vector<std::string> trace; // states visited, starting with the initial one
    Verdict verdict;

    friend bool operator==(const FlowReport &, const FlowReport &) = default;
};

inline FlowReport make_flow_report(const FlowTrace &t, std::string curve_literal, int max_steps)
{
    FlowReport r;
    r.p = t.curve.field().characteristic();
    r.f = t.curve.field().degree();
    r.curve = std::move(curve_literal);
    r.state = t.states.front().to_string();
    r.ordinary = t.ordinary;
    r.max_steps = max_steps;
    for (const HiggsState &s : t.states)
        r.trace.push_back(s.to_string());
    r.verdict = t.verdict;
    return r;
}

struct LocusSummary
{
    std::vector<SupersingularLocus> loci;

    friend bool operator==(const LocusSummary &, const LocusSummary &) = default;
};

struct MassSummary
{
    std::vector<MassReport> reports;

    bool all_pass() const
    {
        return std::all_of(reports.begin(), reports.end(), [](const MassReport &r) { return r.pass; });
    }

    friend bool operator==(const MassSummary &, const MassSummary &) = default;
};

struct HasseWittSummary
{
    std::vector<HasseWittCheck> divisor_checks;
    std::optional<ShimuraMass> shimura;

    bool all_pass() const
    {
        return std::all_of(divisor_checks.begin(), divisor_checks.end(), [](const HasseWittCheck &c) { return c.pass(); }) &&
               (!shimura || shimura->pass());
    }

    friend bool operator==(const HasseWittSummary &, const HasseWittSummary &) = default;
};

struct ClumpSummary
{
    std::vector<ClumpReport> reports;

    bool all_pass() const
    {
        return std::all_of(reports.begin(), reports.end(), [](const ClumpReport &r) { return r.pass(); });
    }

    friend bool operator==(const ClumpSummary &, const ClumpSummary &) = default;
};

struct SelftestReport
{
    std::vector<CheckResult> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
    }

    friend bool operator==(const SelftestReport &, const SelftestReport &) = default;
};

using Payload = std::variant<ScanReport, FlowReport, LocusSummary, MassSummary, HasseWittSummary, ClumpSummary, SelftestReport>;

/// Subcommand name for each payload alternative, in variant order.
inline constexpr const char *kPayloadCommands[] = {"scan", "flow", "ss-count", "mass", "hw", "clump", "selftest"};

inline std::string payload_command(const Payload &p) { return kPayloadCommands[p.index()]; }

/// False when the payload records a failed check; scans and flows carry none.
inline bool payload_passes(const Payload &p)
{
    return std::visit(
        [](const auto &r) {
            if constexpr (requires { r.all_pass(); })
                return r.all_pass();
            else
                return true;
        },
        p);
}

} // namespace hdrflow
