#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "hdrflow/arith/field.hpp"

using namespace hdrflow;

namespace {

// Brute-force oracle for the canonical modulus in degrees 2..4: a monic
// polynomial of degree <= 3 is irreducible iff it has no root; degree 4 also
// needs the absence of a monic quadratic factor.
std::vector<std::uint64_t> brute_canonical_modulus(std::uint64_t p, int f)
{
    auto eval = [p](const std::vector<std::uint64_t> &m, std::uint64_t x) {
        std::uint64_t acc = 0;
        for (auto it = m.rbegin(); it != m.rend(); ++it)
            acc = (acc * x + *it) % p;
        return acc;
    };
    auto divides = [p](std::vector<std::uint64_t> a, const std::vector<std::uint64_t> &b) {
        // b monic
        while (a.size() >= b.size()) {
            std::uint64_t c = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
            a.pop_back();
        }
        for (auto v : a)
            if (v)
                return false;
        return true;
    };
    std::uint64_t total = 1;
    for (int i = 0; i < f; ++i)
        total *= p;
    // enumerate with c0 as the most significant digit
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> m(f + 1, 0);
        m[f] = 1;
        std::uint64_t rest = code;
        for (int i = f - 1; i >= 0; --i) {
            m[i] = rest % p;
            rest /= p;
        }
        bool irreducible = true;
        for (std::uint64_t x = 0; x < p && irreducible; ++x)
            if (eval(m, x) == 0)
                irreducible = false;
        if (irreducible && f == 4) {
            for (std::uint64_t a = 0; a < p && irreducible; ++a)
                for (std::uint64_t b = 0; b < p && irreducible; ++b)
                    if (divides(m, {a, b, 1}))
                        irreducible = false;
        }
        if (irreducible)
            return m;
    }
    return {};
}

std::vector<std::uint64_t> modulus_of(const FieldDescriptor &F)
{
    std::vector<std::uint64_t> m;
    for (auto c : F.modulus())
        m.push_back(c);
    return m;
}

} // namespace

TEST(MakeField, PrimeFieldUsesModulusX)
{
    auto F = make_field(5, 1);
    EXPECT_EQ(modulus_of(*F), (std::vector<std::uint64_t>{0, 1}));
    EXPECT_EQ(F->order(), 5);
}

TEST(MakeField, SmallExtensionsMatchExhaustiveSearch)
{
    EXPECT_EQ(modulus_of(*make_field(3, 2)), (std::vector<std::uint64_t>{1, 0, 1}));
    EXPECT_EQ(modulus_of(*make_field(7, 2)), (std::vector<std::uint64_t>{1, 0, 1}));
    for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 31u, 101u})
        for (int f = 2; f <= 3; ++f)
            EXPECT_EQ(modulus_of(*make_field(p, f)), brute_canonical_modulus(p, f)) << p << "^" << f;
    for (std::uint64_t p : {3u, 5u, 7u})
        EXPECT_EQ(modulus_of(*make_field(p, 4)), brute_canonical_modulus(p, 4)) << p;
}

TEST(MakeField, RejectsBadInput)
{
    auto kind_of = [](auto fn) {
        try {
            fn();
        } catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    EXPECT_EQ(kind_of([] { make_field(9, 1); }), ErrorKind::CompositeP);
    EXPECT_EQ(kind_of([] { make_field(2, 1); }), ErrorKind::UnsupportedRange);
    EXPECT_EQ(kind_of([] { make_field(5, 0); }), ErrorKind::UnsupportedRange);
    EXPECT_EQ(kind_of([] { make_field(5, 13); }), ErrorKind::UnsupportedRange);
    EXPECT_EQ(kind_of([] { make_field(2147483659ULL, 1); }), ErrorKind::UnsupportedRange);
}

TEST(MakeField, DescriptorsAreInterned)
{
    auto a = make_field(13, 3);
    auto b = make_field(13, 3);
    EXPECT_EQ(a.get(), b.get());
    EXPECT_NE(make_field(13, 2).get(), a.get());
}

TEST(FqArith, WorkedExamples)
{
    auto F5 = make_field(5, 1);
    EXPECT_EQ(FqElement::from_int(*F5, 2).inv(), FqElement::from_int(*F5, 3));
    EXPECT_FALSE(FqElement::from_int(*F5, 2).sqrt_opt().has_value());

    auto F9 = make_field(3, 2);
    auto u = FqElement::generator(*F9);
    EXPECT_EQ(u.pow(9), u);
    EXPECT_NE(u.pow(3), u);
}

TEST(FqArith, ErrorsOnMismatchAndZeroDivision)
{
    auto F5 = make_field(5, 1);
    auto F7 = make_field(7, 1);
    auto a = FqElement::from_int(*F5, 1), b = FqElement::from_int(*F7, 1);
    EXPECT_THROW(a + b, Error);
    try {
        (void)(a * b);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
    }
    try {
        (void)FqElement(*F5).inv();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    }
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint64_t, int>> { };

TEST_P(FieldAxioms, RandomTriples)
{
    auto [p, f] = GetParam();
    auto F = make_field(p, f);
    std::mt19937_64 rng(p * 131 + f);
    const auto one = FqElement::from_int(*F, 1);
    for (int i = 0; i < 10000; ++i) {
        auto a = FqElement::random(*F, rng), b = FqElement::random(*F, rng), c = FqElement::random(*F, rng);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a - a, FqElement(*F));
        if (!a.is_zero())
            ASSERT_EQ(a * a.inv(), one);
    }
}

TEST_P(FieldAxioms, FrobeniusFixesField)
{
    auto [p, f] = GetParam();
    auto F = make_field(p, f);
    std::mt19937_64 rng(p * 7 + f);
    for (int i = 0; i < 200; ++i) {
        auto x = FqElement::random(*F, rng);
        ASSERT_EQ(x.pow(F->order()), x);
        FqElement y = x;
        for (int k = 0; k < f; ++k)
            y = y.frobenius();
        ASSERT_EQ(y, x);
    }
}

TEST_P(FieldAxioms, SquareRoots)
{
    auto [p, f] = GetParam();
    auto F = make_field(p, f);
    std::mt19937_64 rng(p * 11 + f);
    int nonsquares = 0;
    for (int i = 0; i < 200; ++i) {
        auto x = FqElement::random(*F, rng);
        auto r = (x * x).sqrt_opt();
        ASSERT_TRUE(r.has_value());
        ASSERT_EQ(*r * *r, x * x);
        auto y = FqElement::random(*F, rng);
        auto s = y.sqrt_opt();
        ASSERT_EQ(s.has_value(), y.is_square());
        if (s)
            ASSERT_EQ(*s * *s, y);
        else
            ++nonsquares;
    }
    EXPECT_GT(nonsquares, 0);
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::pair<std::uint64_t, int>{5, 1}, std::pair<std::uint64_t, int>{101, 1},
                                           std::pair<std::uint64_t, int>{2147483647ULL, 1},
                                           std::pair<std::uint64_t, int>{5, 2}, std::pair<std::uint64_t, int>{13, 2},
                                           std::pair<std::uint64_t, int>{1000003, 2},
                                           std::pair<std::uint64_t, int>{7, 3}, std::pair<std::uint64_t, int>{3, 5},
                                           std::pair<std::uint64_t, int>{5, 12}));

TEST(FqArith, SquareCountMatchesHalfTheUnits)
{
    for (auto [p, f] : {std::pair{5, 2}, std::pair{7, 3}, std::pair{11, 1}, std::pair{3, 4}}) {
        auto F = make_field(p, f);
        const auto q = *F->order_u64();
        std::uint64_t squares = 0, roots_ok = 0;
        for (std::uint64_t i = 0; i < q; ++i) {
            auto x = FqElement::from_index(*F, i);
            if (auto r = x.sqrt_opt()) {
                ++squares;
                roots_ok += (*r * *r == x);
            }
        }
        EXPECT_EQ(squares, (q + 1) / 2) << p << "^" << f;
        EXPECT_EQ(roots_ok, squares);
    }
}

TEST(FqArith, TextRoundTrip)
{
    auto F = make_field(7, 3);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto x = FqElement::random(*F, rng);
        EXPECT_EQ(FqElement::parse(*F, x.to_string()), x);
    }
    auto F25 = make_field(5, 2);
    EXPECT_EQ(FqElement::parse(*F25, "3+2*u").to_string(), "3+2*u");
    EXPECT_EQ(FqElement::parse(*F25, "u+3"), FqElement::parse(*F25, "3+1*u"));
    EXPECT_EQ(FqElement::parse(*F25, "7"), FqElement::from_int(*F25, 2));
    EXPECT_THROW(FqElement::parse(*F25, "3+2*v"), Error);
    EXPECT_THROW(FqElement::parse(*F25, "u^2"), Error);
    EXPECT_THROW(FqElement::parse(*make_field(5, 1), "u"), Error);
}

TEST(FqArith, OrderIsLexicographicFromConstantTerm)
{
    auto F = make_field(5, 2);
    auto a = FqElement::parse(*F, "1+4*u"), b = FqElement::parse(*F, "2+0*u");
    EXPECT_LT(a, b);
    std::set<FqElement> all;
    for (std::uint64_t i = 0; i < 25; ++i)
        all.insert(FqElement::from_index(*F, i));
    EXPECT_EQ(all.size(), 25u);
    EXPECT_EQ(all.begin()->to_string(), "0+0*u");
    EXPECT_EQ(std::next(all.begin())->to_string(), "0+1*u");
}
