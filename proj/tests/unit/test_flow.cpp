#include <gtest/gtest.h>

#include <random>

#include "hdrflow/flow/engine.hpp"

using namespace hdrflow;

namespace {

FqElement el(const Field &F, std::int64_t v) { return FqElement::from_int(*F, v); }

Curve weier(const Field &F, std::int64_t a, std::int64_t b) { return Curve::weierstrass(el(F, a), el(F, b)); }

// every affine point, by exhaustive search
std::vector<Point> all_points(const Curve &E)
{
    std::vector<Point> pts{E.infinity()};
    const auto q = *E.field().order_u64();
    for (std::uint64_t i = 0; i < q; ++i)
        for (std::uint64_t k = 0; k < q; ++k) {
            auto x = FqElement::from_index(E.field(), i), y = FqElement::from_index(E.field(), k);
            if (E.contains(x, y))
                pts.push_back(E.point(x, y));
        }
    return pts;
}

template <class Rng>
Curve random_curve(const Field &F, Rng &rng)
{
    const auto p = static_cast<std::int64_t>(F->characteristic());
    while (true) {
        auto a = static_cast<std::int64_t>(rng() % p), b = static_cast<std::int64_t>(rng() % p);
        if ((4 * a * a * a + 27 * b * b) % p != 0)
            return weier(F, a, b);
    }
}

std::uint64_t brute_order(const Point &P)
{
    std::uint64_t n = 1;
    for (Point Q = P; !Q.is_infinity(); Q = Q + P)
        ++n;
    return n;
}

// least m <= bound with [p^m]P = P, or 0
std::uint64_t brute_line_period(const Point &P, std::uint64_t bound)
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

std::optional<Point> point_of_order(const Curve &E, std::uint64_t n)
{
    for (const Point &P : all_points(E))
        if (brute_order(P) == n)
            return P;
    return std::nullopt;
}

} // namespace

TEST(FlowStep, WorkedExamples)
{
    auto F = make_field(5, 1);
    Curve ordinary = weier(F, 1, 0);
    Curve super = weier(F, 0, 1);
    HiggsState u1({ordinary, {Block::unif()}});
    EXPECT_EQ(flow_step(u1, ordinary), u1);
    HiggsState u2({super, {Block::unif()}});
    EXPECT_EQ(flow_step(u2, super).to_string(), "N");

    auto P = point_of_order(super, 3);
    ASSERT_TRUE(P);
    HiggsState l({super, {Block::line(*P)}});
    EXPECT_EQ(flow_step(l, super), HiggsState(super, {Block::line(P->times(2))}));
}

TEST(FlowStep, SupersingularNSplitsIntoLines)
{
    auto F = make_field(5, 1);
    Curve super = weier(F, 0, 1);
    auto P = point_of_order(super, 6);
    ASSERT_TRUE(P);
    auto next = flow_step(HiggsState(super, {Block::n(*P, 2)}), super);
    EXPECT_EQ(next, HiggsState(super, {Block::line(P->times(5)), Block::line(P->times(5))}));
    Curve ordinary = weier(F, 1, 0);
    auto Q = point_of_order(ordinary, 2);
    ASSERT_TRUE(Q);
    EXPECT_EQ(flow_step(HiggsState(ordinary, {Block::n(*Q, 2)}), ordinary), HiggsState(ordinary, {Block::n(Q->times(5), 2)}));
}

TEST(FlowStep, RejectsUnsupportedBlocks)
{
    auto F = make_field(7, 1);
    Curve E = weier(F, 1, 1);
    for (auto text : {"ext:1,1", "N3", "unif+ext:2,1"}) {
        try {
            flow_step(HiggsState::parse(text, E), E);
            FAIL() << text;
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::UnsupportedBlockStep);
        }
    }
}

TEST(FlowStep, CurveMismatch)
{
    auto F = make_field(7, 1);
    Curve E = weier(F, 1, 1), E2 = weier(F, 2, 1);
    try {
        flow_step(HiggsState::parse("unif", E), E2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::CurveMismatch);
    }
}

TEST(Periodicity, WorkedExamples)
{
    auto F = make_field(11, 1);
    std::optional<Point> P;
    for (int a = 0; a < 11 && !P; ++a)
        for (int b = 0; b < 11 && !P; ++b)
            if ((4 * a * a * a + 27 * b * b) % 11 != 0)
                P = point_of_order(weier(F, a, b), 5);
    ASSERT_TRUE(P);
    auto t = decide_periodicity(HiggsState(P->curve(), {Block::line(*P)}), P->curve());
    EXPECT_EQ(t.verdict, Verdict::periodic(1));
    EXPECT_EQ(t.states.size(), 2u);
    EXPECT_EQ(t.states[1], t.states[0]);

    EXPECT_EQ(frobenius_line_period(3, {7}), Verdict::periodic(6));
    EXPECT_EQ(frobenius_line_period(3, {1}), Verdict::periodic(1));
    EXPECT_EQ(frobenius_line_period(5, {10}), Verdict::non_periodic(NonPeriodicReason::PTorsionEscape));

    auto F5 = make_field(5, 1);
    Curve super = weier(F5, 0, 1);
    auto s = decide_periodicity(HiggsState::parse("unif", super), super);
    EXPECT_EQ(s.verdict, Verdict::non_periodic(NonPeriodicReason::SupersingularDegeneration));
    EXPECT_FALSE(s.ordinary);
    ASSERT_EQ(s.states.size(), 2u);
    EXPECT_EQ(s.states[1].to_string(), "N");

    Curve ordinary = weier(F5, 1, 0);
    auto o = decide_periodicity(HiggsState::parse("unif", ordinary), ordinary);
    EXPECT_EQ(o.verdict, Verdict::periodic(1));
}

TEST(Periodicity, ExtensionBlocks)
{
    auto F = make_field(5, 1);
    Curve super = weier(F, 0, 1), ordinary = weier(F, 1, 0);
    for (auto text : {"ext:1,1", "N3", "line:inf+ext:2,3", "unif+N4"}) {
        EXPECT_EQ(decide_periodicity(HiggsState::parse(text, super), super).verdict,
                  Verdict::non_periodic(NonPeriodicReason::ExtensionObstruction))
            << text;
        EXPECT_EQ(decide_periodicity(HiggsState::parse(text, ordinary), ordinary).verdict.kind,
                  Verdict::Kind::Undetermined)
            << text;
    }
}

TEST(Periodicity, PTorsionEscapeOnAnomalousCurve)
{
    // #E(F_7) = 7 makes every nonzero point 7-torsion
    auto F = make_field(7, 1);
    std::optional<Curve> anomalous;
    for (int a = 0; a < 7 && !anomalous; ++a)
        for (int b = 0; b < 7 && !anomalous; ++b)
            if ((4 * a * a * a + 27 * b * b) % 7 != 0 && all_points(weier(F, a, b)).size() == 7)
                anomalous = weier(F, a, b);
    ASSERT_TRUE(anomalous);
    auto P = all_points(*anomalous)[1];
    for (auto blocks : {std::vector{Block::line(P)}, std::vector{Block::unif(), Block::line(P)},
                        std::vector{Block::n(P, 2)}}) {
        auto t = decide_periodicity(HiggsState(*anomalous, blocks), *anomalous);
        EXPECT_EQ(t.verdict, Verdict::non_periodic(NonPeriodicReason::PTorsionEscape)) << t.states[0].to_string();
    }
}

TEST(Periodicity, MixedOrdinaryStatesReturn)
{
    std::mt19937_64 rng(9);
    int checked = 0;
    for (std::uint64_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
        auto F = make_field(p, 1);
        for (int t = 0; t < 10; ++t) {
            Curve E = random_curve(F, rng);
            if (is_supersingular(E))
                continue;
            auto P = E.random_point(rng), Q = E.random_point(rng);
            HiggsState s(E, {Block::unif(), Block::n(P, 2), Block::line(Q)});
            auto trace = decide_periodicity(s, E);
            if (brute_order(P) % p == 0 || brute_order(Q) % p == 0) {
                EXPECT_EQ(trace.verdict.reason, NonPeriodicReason::PTorsionEscape);
                continue;
            }
            // least m returning the multiset {P, Q} pointwise, per block kind
            std::uint64_t m = 1;
            Point Pm = P.times(static_cast<std::int64_t>(p)), Qm = Q.times(static_cast<std::int64_t>(p));
            while (!(Pm == P && Qm == Q)) {
                Pm = Pm.times(static_cast<std::int64_t>(p));
                Qm = Qm.times(static_cast<std::int64_t>(p));
                ++m;
            }
            ASSERT_EQ(trace.verdict, Verdict::periodic(m)) << s.to_string();
            ASSERT_EQ(trace.states.size(), m + 1);
            ++checked;
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(Periodicity, UndeterminedWhenStepsRunOut)
{
    auto F = make_field(101, 1);
    std::mt19937_64 rng(5);
    Curve E = weier(F, 1, 3);
    ASSERT_FALSE(is_supersingular(E));
    Point P = E.random_point(rng);
    while (brute_line_period(P, 200) <= 2)
        P = E.random_point(rng);
    auto t = decide_periodicity(HiggsState(E, {Block::unif(), Block::line(P)}), E, 2);
    EXPECT_EQ(t.verdict, Verdict::undetermined(2));
    EXPECT_EQ(t.states.size(), 3u);
    EXPECT_THROW(decide_periodicity(HiggsState(E, {Block::unif()}), E, 0), Error);
}

TEST(Properties, RankAndDegreeConservation)
{
    std::mt19937_64 rng(17);
    for (std::uint64_t p : {5u, 7u, 11u, 13u, 43u, 97u}) {
        auto F = make_field(p, 1);
        for (int t = 0; t < 40; ++t) {
            Curve E = random_curve(F, rng);
            std::vector<Block> blocks;
            const int n = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < n; ++i) {
                switch (rng() % 3) {
                case 0: blocks.push_back(Block::line(E.random_point(rng))); break;
                case 1: blocks.push_back(Block::n(E.random_point(rng), 2)); break;
                default: blocks.push_back(Block::unif()); break;
                }
            }
            HiggsState s(E, blocks);
            for (int step = 0; step < 5; ++step) {
                HiggsState next = flow_step(s, E);
                ASSERT_EQ(next.rank(), s.rank());
                ASSERT_EQ(next.degree(), 0);
                for (const Block &b : next.blocks())
                    ASSERT_EQ(b.degree(), 0);
                s = next;
            }
        }
    }
}

TEST(Properties, UnifFixedPointDichotomy)
{
    for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
        auto F = make_field(p, 1);
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                if ((4 * a * a * a + 27 * b * b) % p == 0)
                    continue;
                Curve E = weier(F, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
                HiggsState s(E, {Block::unif()});
                if (!is_supersingular(E)) {
                    ASSERT_EQ(flow_step(s, E), s);
                    continue;
                }
                for (int step = 0; step < 50; ++step) {
                    s = flow_step(s, E);
                    ASSERT_FALSE(s.has(BlockKind::Unif)) << E.describe();
                }
            }
    }
}

TEST(Properties, LineFlowMatchesBruteForce)
{
    std::mt19937_64 rng(1000);
    const auto primes = nt::primes_in_range(5, 100);
    for (int t = 0; t < 300; ++t) {
        const std::uint64_t p = primes[rng() % primes.size()];
        auto F = make_field(p, 1);
        Curve E = random_curve(F, rng);
        Point P = E.random_point(rng);
        const std::uint64_t ord = brute_order(P);
        const std::uint64_t m = brute_line_period(P, ord);
        auto v = decide_periodicity(HiggsState(E, {Block::line(P)}), E).verdict;
        if (m == 0)
            ASSERT_EQ(v, Verdict::non_periodic(NonPeriodicReason::PTorsionEscape));
        else
            ASSERT_EQ(v, Verdict::periodic(m));
    }
}

TEST(Classify, WorkedExamples)
{
    auto F = make_field(7, 1);
    Curve E = weier(F, 1, 1);
    std::mt19937_64 rng(3);
    HiggsState lines(E, {Block::line(E.random_point(rng)), Block::line(E.random_point(rng))});
    EXPECT_EQ(classify_higgs(lines, true), HiggsClass::PeriodicTorsionSum);
    EXPECT_EQ(classify_higgs(lines, false), HiggsClass::PeriodicTorsionSum);
    EXPECT_EQ(classify_higgs(HiggsState::parse("N", E), true), HiggsClass::NonPeriodic);
    EXPECT_EQ(classify_higgs(HiggsState::parse("N", E), false), HiggsClass::ConditionallyUnknown);
    EXPECT_EQ(classify_higgs(HiggsState::parse("unif+line:inf", E), true), HiggsClass::NonPeriodic);
}

TEST(StateLiterals, ParseAndPrint)
{
    auto F = make_field(5, 1);
    Curve E = weier(F, 0, 1);
    auto s = HiggsState::parse("line:0,1+unif+N+line:inf+ext:2,1+N3:2,3", E);
    EXPECT_EQ(s.rank(), 1 + 2 + 2 + 1 + 3 + 3);
    EXPECT_EQ(HiggsState::parse(s.to_string(), E), s);
    EXPECT_EQ(HiggsState::parse("unif+line:inf", E), HiggsState::parse("line:inf+unif", E));

    auto F2 = make_field(7, 2);
    Curve E2 = Curve::weierstrass(FqElement::from_int(*F2, 1), FqElement::from_int(*F2, 3));
    std::mt19937_64 rng(2);
    Point P = E2.random_point(rng);
    while (P.x().in_prime_subfield() || P.y().in_prime_subfield())
        P = E2.random_point(rng);
    HiggsState t(E2, {Block::line(P), Block::unif(), Block::n(P, 2)});
    EXPECT_NE(t.to_string().find("*u"), std::string::npos);
    EXPECT_EQ(HiggsState::parse(t.to_string(), E2), t);

    for (auto bad : {"", "lines:inf", "line:1", "ext:0,1", "N1", "line:0,0", "unif+"})
        EXPECT_THROW(HiggsState::parse(bad, E), Error) << bad;
}
