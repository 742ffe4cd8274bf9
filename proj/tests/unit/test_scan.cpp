#include <gtest/gtest.h>

#include <random>

#include "hdrflow/scan/scanner.hpp"

using namespace hdrflow;

namespace {

RationalCurve weier(long long an, long long ad, long long bn, long long bd)
{
    return RationalCurve::weierstrass(ExactRational(an, ad), ExactRational(bn, bd));
}

std::vector<std::uint64_t> primes_mod(std::uint64_t lo, std::uint64_t hi, std::uint64_t m, std::uint64_t r)
{
    std::vector<std::uint64_t> out;
    for (auto p : nt::primes_in_range(lo, hi))
        if (p % m == r)
            out.push_back(p);
    return out;
}

} // namespace

TEST(Reduction, WorkedExamples)
{
    auto L = RationalCurve::parse("legendre:2");
    auto r = reduce_mod_p(L, 7);
    ASSERT_TRUE(std::holds_alternative<Curve>(r));
    const Curve &E = std::get<Curve>(r);
    EXPECT_EQ(E.form(), CurveForm::Legendre);
    EXPECT_EQ(*E.legendre_parameter(), FqElement::from_int(E.field(), 2));
    EXPECT_EQ(E.field().characteristic(), 7u);

    try {
        reduce_mod_p(L, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SmallCharacteristic);
    }

    auto W = RationalCurve::parse("weier:1/5,1/1");
    EXPECT_TRUE(std::holds_alternative<BadReduction>(reduce_mod_p(W, 5)));
    EXPECT_TRUE(W.is_bad(5));
}

TEST(Reduction, LiteralsAndValidation)
{
    EXPECT_EQ(RationalCurve::parse("weier:-3/4,5").to_string(), "weier:-3/4,5/1");
    EXPECT_EQ(RationalCurve::parse("legendre:6/3").to_string(), "legendre:2/1");
    for (auto bad : {"legendre:1", "legendre:0", "weier:0,0", "weier:-3,2", "weier:1", "hyper:1", "legendre:1/0"})
        EXPECT_THROW(RationalCurve::parse(bad), Error) << bad;
}

TEST(Reduction, BadPrimeSoundness)
{
    std::mt19937_64 rng(6);
    const auto primes = nt::primes_in_range(5, 3000);
    for (int t = 0; t < 40; ++t) {
        auto draw = [&] { return static_cast<long long>(rng() % 2001) - 1000; };
        auto den = [&] { return static_cast<long long>(1 + rng() % 60); };
        std::optional<RationalCurve> C;
        try {
            C = t % 2 ? weier(draw(), den(), draw(), den()) : RationalCurve::legendre(ExactRational(draw(), den()));
        } catch (const Error &) {
            continue;
        }
        for (auto p : primes) {
            auto r = reduce_mod_p(*C, p);
            ASSERT_EQ(C->is_bad(p), std::holds_alternative<BadReduction>(r)) << C->to_string() << " p=" << p;
        }
    }
}

TEST(Reduction, LargeDiscriminantKeepsUnfactoredCofactor)
{
    // B = 7 * 10000019 * 1000000007 * 998244353
    ExactRational::Integer B = ExactRational::Integer(7) * 10000019 * 1000000007 * 998244353;
    auto C = RationalCurve::weierstrass(ExactRational(0), ExactRational(B, 1));
    EXPECT_EQ(C.bad_primes(), (std::vector<std::uint64_t>{3, 7}));
    ASSERT_EQ(C.unresolved_bad_part().size(), 1u);
    EXPECT_TRUE(C.is_bad(10000019));
    EXPECT_FALSE(C.is_bad(10000079));
    EXPECT_TRUE(std::holds_alternative<BadReduction>(reduce_mod_p(C, 10000019)));
}

TEST(Scan, CmLaws)
{
    auto legendre = scan(RationalCurve::parse("legendre:2"), 5, 10000, 2);
    EXPECT_EQ(legendre.supersingular_primes, primes_mod(5, 10000, 4, 3));
    auto j0 = scan(RationalCurve::parse("weier:0,1"), 5, 10000, 2);
    EXPECT_EQ(j0.supersingular_primes, primes_mod(5, 10000, 3, 2));
}

TEST(Scan, RecordsAndTotals)
{
    auto C = RationalCurve::parse("weier:1,1");
    auto r = scan(C, 2, 2000);
    EXPECT_EQ(r.records.front().p, 2u);
    EXPECT_EQ(r.records.front().status, PrimeStatus::Skipped);
    EXPECT_EQ(r.records[1].status, PrimeStatus::Skipped);
    EXPECT_EQ(r.totals.skipped, 2u);
    EXPECT_EQ(r.totals.primes, nt::primes_in_range(2, 2000).size());
    EXPECT_EQ(r.totals.primes, r.totals.skipped + r.totals.bad + r.totals.good);
    EXPECT_EQ(r.totals.good, r.totals.ordinary + r.totals.supersingular);
    // 4 + 27 = 31
    EXPECT_EQ(r.totals.bad, 1u);
    for (std::size_t i = 1; i < r.records.size(); ++i)
        EXPECT_LT(r.records[i - 1].p, r.records[i].p);
}

TEST(Scan, ClassificationMatchesBothOracles)
{
    auto C = RationalCurve::parse("weier:1,1");
    auto r = scan(C, 5, 3000);
    for (const auto &rec : r.records) {
        if (rec.status == PrimeStatus::Bad)
            continue;
        const Curve E = std::get<Curve>(reduce_mod_p(C, rec.p));
        const bool ss = rec.status == PrimeStatus::Supersingular;
        ASSERT_EQ(ss, is_supersingular_trace(E)) << rec.p;
        ASSERT_EQ(ss, is_supersingular_hasse(E)) << rec.p;
    }
    EXPECT_GE(scan(C, 5, 10000).totals.supersingular, 1u);
}

TEST(Scan, DeterministicAcrossWorkerCounts)
{
    auto C = RationalCurve::parse("weier:-7/3,11/2");
    auto a = scan(C, 5, 20000, 1);
    auto b = scan(C, 5, 20000, 4);
    EXPECT_EQ(a, b);
}

TEST(Scan, AboveExhaustiveLimit)
{
    auto C = RationalCurve::parse("legendre:-1");
    auto r = scan(C, 1048500, 1049200, 2);
    ASSERT_GT(r.records.size(), 10u);
    for (const auto &rec : r.records) {
        ASSERT_TRUE(rec.trace.has_value());
        // y^2 = x(x-1)(x+1) has j = 1728
        ASSERT_EQ(rec.status == PrimeStatus::Supersingular, rec.p % 4 == 3) << rec.p;
    }
}

TEST(Scan, RangeValidation)
{
    auto C = RationalCurve::parse("legendre:2");
    try {
        scan(C, 5, kScanPrimeLimit + 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RangeTooLarge);
    }
    EXPECT_THROW(scan(C, 100, 50), Error);
    EXPECT_THROW(scan(C, 1, 50), Error);
}

TEST(Density, Summaries)
{
    auto r = scan(RationalCurve::parse("legendre:2"), 5, 10000);
    auto s = density_summary(r);
    ASSERT_TRUE(s.ratio);
    EXPECT_NEAR(s.ratio_approx, 0.5, 0.03);
    EXPECT_EQ(s.totals, r.totals);

    auto single = scan(RationalCurve::parse("legendre:2"), 5, 5);
    auto t = density_summary(single);
    EXPECT_EQ(t.totals.primes, 1u);
    EXPECT_EQ(single.records.size(), 1u);
}
