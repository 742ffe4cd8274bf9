#pragma once

// The Higgs-de Rham flow Gr o C^{-1} as a rewrite system on block multisets,
// and periodicity verdicts.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hdrflow/arith/ntheory.hpp"
#include "hdrflow/ec/invariants.hpp"
#include "hdrflow/flow/higgs_state.hpp"

namespace hdrflow {

enum class NonPeriodicReason { SupersingularDegeneration, PTorsionEscape, ExtensionObstruction };

constexpr std::string_view to_string(NonPeriodicReason r) noexcept
{
    switch (r) {
    case NonPeriodicReason::SupersingularDegeneration: return "SupersingularDegeneration";
    case NonPeriodicReason::PTorsionEscape: return "PTorsionEscape";
    case NonPeriodicReason::ExtensionObstruction: return "ExtensionObstruction";
    }
    return "?";
}

struct Verdict
{
    enum class Kind { Periodic, NonPeriodic, Undetermined };

    Kind kind = Kind::Undetermined;
    std::uint64_t period = 0;        // Periodic
    NonPeriodicReason reason{};      // NonPeriodic
    std::uint64_t steps_exhausted = 0; // Undetermined

    static Verdict periodic(std::uint64_t m) { return {Kind::Periodic, m, {}, 0}; }
    static Verdict non_periodic(NonPeriodicReason r) { return {Kind::NonPeriodic, 0, r, 0}; }
    static Verdict undetermined(std::uint64_t steps) { return {Kind::Undetermined, 0, {}, steps}; }

    bool is_periodic() const noexcept { return kind == Kind::Periodic; }
    bool is_non_periodic() const noexcept { return kind == Kind::NonPeriodic; }

    std::string to_string() const
    {
        switch (kind) {
        case Kind::Periodic: return "Periodic(" + std::to_string(period) + ")";
        case Kind::NonPeriodic: return "NonPeriodic(" + std::string(hdrflow::to_string(reason)) + ")";
        case Kind::Undetermined: return "Undetermined(" + std::to_string(steps_exhausted) + ")";
        }
        return {};
    }

    friend bool operator==(const Verdict &, const Verdict &) = default;
};

struct FlowTrace
{
    Curve curve;
    bool ordinary;
    std::vector<HiggsState> states;
    Verdict verdict;
};

inline constexpr int kDefaultMaxSteps = 64;

namespace detail {

inline Point frobenius_pullback(const Point &P)
{
    return P.times(static_cast<std::int64_t>(P.curve().field().characteristic()));
}

inline HiggsState flow_step_known(const HiggsState &state, bool supersingular)
{
    const Curve &E = state.curve();
    std::vector<Block> next;
    next.reserve(state.blocks().size() + 1);
    for (const Block &b : state.blocks()) {
        switch (b.kind) {
        case BlockKind::Line:
            next.push_back(Block::line(frobenius_pullback(*b.point)));
            break;
        case BlockKind::N:
            if (b.r != 2)
                raise(ErrorKind::UnsupportedBlockStep, "no flow step for " + b.to_string());
            if (supersingular) {
                const Point Q = frobenius_pullback(*b.point);
                next.push_back(Block::line(Q));
                next.push_back(Block::line(Q));
            } else {
                next.push_back(Block::n(frobenius_pullback(*b.point), 2));
            }
            break;
        case BlockKind::Unif:
            next.push_back(supersingular ? Block::n(E.infinity(), 2) : Block::unif());
            break;
        case BlockKind::Ext:
            raise(ErrorKind::UnsupportedBlockStep, "no flow step for " + b.to_string());
        }
    }
    return HiggsState(E, std::move(next));
}

inline void check_curve(const HiggsState &state, const Curve &curve)
{
    if (!(state.curve() == curve))
        raise(ErrorKind::CurveMismatch, "state lives on a different curve");
}

} // namespace detail

/// One step of the flow; supersingularity is decided by the ec oracle.
inline HiggsState flow_step(const HiggsState &state, const Curve &curve)
{
    detail::check_curve(state, curve);
    return detail::flow_step_known(state, is_supersingular(curve));
}

/// Period of p acting on points of the given orders: PTorsionEscape if p
/// divides an order, otherwise the multiplicative order of p modulo their lcm.
inline Verdict frobenius_line_period(std::uint64_t p, const std::vector<std::uint64_t> &orders)
{
    std::uint64_t d = 1;
    for (auto n : orders) {
        if (n % p == 0)
            return Verdict::non_periodic(NonPeriodicReason::PTorsionEscape);
        d = nt::lcm(d, n);
    }
    return Verdict::periodic(d == 1 ? 1 : nt::multiplicative_order(p % d, d));
}

inline FlowTrace decide_periodicity(const HiggsState &state, const Curve &curve, int max_steps = kDefaultMaxSteps)
{
    if (max_steps < 1)
        raise(ErrorKind::UnsupportedRange, "max_steps must be >= 1");
    detail::check_curve(state, curve);
    const bool supersingular = is_supersingular(curve);
    FlowTrace trace{curve, !supersingular, {state}, Verdict::undetermined(0)};
    const std::uint64_t p = curve.field().characteristic();

    auto point_orders = [&] {
        std::vector<std::uint64_t> orders;
        for (const Block &b : state.blocks())
            if (b.point)
                orders.push_back(point_order(*b.point));
        return orders;
    };

    // (c) extensions of trivial bundles and higher symmetric powers of N
    for (const Block &b : state.blocks()) {
        if (b.kind == BlockKind::Ext || (b.kind == BlockKind::N && b.r > 2)) {
            trace.verdict = supersingular ? Verdict::non_periodic(NonPeriodicReason::ExtensionObstruction)
                                          : Verdict::undetermined(0);
            return trace;
        }
    }

    // (a) pure sums of line bundles, decided by the group structure
    if (state.pure_lines()) {
        trace.verdict = frobenius_line_period(p, point_orders());
        const std::uint64_t shown = trace.verdict.is_periodic()
                                        ? std::min<std::uint64_t>(trace.verdict.period, max_steps)
                                        : static_cast<std::uint64_t>(max_steps);
        for (std::uint64_t i = 0; i < shown; ++i)
            trace.states.push_back(detail::flow_step_known(trace.states.back(), supersingular));
        return trace;
    }

    // (b) iterate
    if (supersingular) {
        // Unif becomes N and N splits into lines; neither is ever recreated
        trace.states.push_back(detail::flow_step_known(state, true));
        trace.verdict = Verdict::non_periodic(NonPeriodicReason::SupersingularDegeneration);
        return trace;
    }
    // the p-part of a point order strictly drops under P -> [p]P
    if (auto lines = frobenius_line_period(p, point_orders()); lines.is_non_periodic()) {
        trace.verdict = lines;
        return trace;
    }
    for (int step = 1; step <= max_steps; ++step) {
        trace.states.push_back(detail::flow_step_known(trace.states.back(), false));
        if (trace.states.back() == state) {
            trace.verdict = Verdict::periodic(static_cast<std::uint64_t>(step));
            return trace;
        }
    }
    trace.verdict = Verdict::undetermined(static_cast<std::uint64_t>(max_steps));
    return trace;
}

enum class HiggsClass { PeriodicTorsionSum, NonPeriodic, ConditionallyUnknown };

constexpr std::string_view to_string(HiggsClass c) noexcept
{
    switch (c) {
    case HiggsClass::PeriodicTorsionSum: return "PeriodicTorsionSum";
    case HiggsClass::NonPeriodic: return "NonPeriodic";
    case HiggsClass::ConditionallyUnknown: return "ConditionallyUnknown";
    }
    return "?";
}

/// Over a curve with infinitely many supersingular primes the periodic
/// objects are exactly the sums of torsion line bundles with zero field.
inline HiggsClass classify_higgs(const HiggsState &state, bool supersingular_rich)
{
    if (state.pure_lines())
        return HiggsClass::PeriodicTorsionSum;
    return supersingular_rich ? HiggsClass::NonPeriodic : HiggsClass::ConditionallyUnknown;
}

} // namespace hdrflow
