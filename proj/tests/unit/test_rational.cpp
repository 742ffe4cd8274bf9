#include <gtest/gtest.h>

#include <gmp.h>

#include "hdrflow/arith/rational.hpp"

using namespace hdrflow;

TEST(ExactRational, HarmonicSumMatchesGmp)
{
    ExactRational sum;
    mpq_t oracle, term;
    mpq_init(oracle);
    mpq_init(term);
    for (long k = 1; k <= 50; ++k) {
        sum += ExactRational(1, k);
        mpq_set_si(term, 1, static_cast<unsigned long>(k));
        mpq_add(oracle, oracle, term);
    }
    char *num = mpz_get_str(nullptr, 10, mpq_numref(oracle));
    char *den = mpz_get_str(nullptr, 10, mpq_denref(oracle));
    EXPECT_EQ(sum.numerator().str(), std::string(num));
    EXPECT_EQ(sum.denominator().str(), std::string(den));
    free(num);
    free(den);
    mpq_clear(term);
    mpq_clear(oracle);
}

TEST(ExactRational, ReducedWithPositiveDenominator)
{
    ExactRational r(10, -24);
    EXPECT_EQ(r.to_string(), "-5/12");
    EXPECT_EQ(ExactRational(1, 6) + ExactRational(1, 4), ExactRational(5, 12));
    EXPECT_EQ(ExactRational(3).to_string(), "3/1");
    EXPECT_THROW(ExactRational(1, 0), Error);
}

TEST(ExactRational, Parse)
{
    EXPECT_EQ(ExactRational::parse("5/12"), ExactRational(5, 12));
    EXPECT_EQ(ExactRational::parse("-7"), ExactRational(-7));
    EXPECT_EQ(ExactRational::parse("4/8").to_string(), "1/2");
    EXPECT_THROW(ExactRational::parse("1/"), Error);
    EXPECT_THROW(ExactRational::parse("a/2"), Error);
    EXPECT_THROW(ExactRational::parse("1/-2"), Error);
}
