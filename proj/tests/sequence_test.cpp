#include <gtest/gtest.h>

#include <array>

#include "stackfold/errors.hpp"
#include "stackfold/sequence.hpp"

namespace stackfold {
namespace {

TEST(ParseSequence, MapsEachCharacter) {
    const RnaSequence seq = parse_sequence("GGGAAACCC");
    ASSERT_EQ(seq.size(), 9u);
    const std::vector<Base> want = {Base::G, Base::G, Base::G, Base::A, Base::A,
                                    Base::A, Base::C, Base::C, Base::C};
    EXPECT_EQ(seq.bases(), want);
    EXPECT_EQ(seq.at(1), Base::G);
    EXPECT_EQ(seq.at(9), Base::C);
}

TEST(ParseSequence, FoldsCaseAndMapsTtoU) {
    EXPECT_EQ(parse_sequence("ggGAaUt").str(), "GGGAAUU");
    EXPECT_EQ(parse_sequence("  acgu \n").str(), "ACGU");
}

TEST(ParseSequence, ReportsFirstInvalidPosition) {
    try {
        parse_sequence("GGXACC");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_sequence("ACGN"), ParseError);
    EXPECT_THROW(parse_sequence("   "), ParseError);
}

TEST(ParseSequence, PositionIsOneBased) {
    const RnaSequence seq = parse_sequence("AC");
    EXPECT_THROW(seq.at(0), std::out_of_range);
    EXPECT_THROW(seq.at(3), std::out_of_range);
}

TEST(ParseFasta, SkipsHeadersAndJoinsLines) {
    EXPECT_EQ(parse_fasta(">seq1 test\nGGGA\nAACCC\n").str(), "GGGAAACCC");
    EXPECT_EQ(parse_fasta("ACGU").str(), "ACGU");
    EXPECT_EQ(parse_fasta(">a\nAC\n>b\nGG\n").str(), "AC");
}

TEST(ValidPair, CanonicalAndWobble) {
    EXPECT_TRUE(is_valid_pair(Base::G, Base::C));
    EXPECT_TRUE(is_valid_pair(Base::G, Base::U));
    EXPECT_FALSE(is_valid_pair(Base::A, Base::G));
}

TEST(ValidPair, ExactlySixSymmetricCombinations) {
    int valid = 0;
    for (Base a : kAllBases) {
        for (Base b : kAllBases) {
            EXPECT_EQ(is_valid_pair(a, b), is_valid_pair(b, a));
            valid += is_valid_pair(a, b);
        }
    }
    EXPECT_EQ(valid, 6);
}

TEST(RandomSequence, DeterministicForSeed) {
    Rng a(42), b(42);
    EXPECT_EQ(random_sequence(5, a), random_sequence(5, b));
    Rng c(7);
    EXPECT_EQ(random_sequence(60, c).size(), 60u);
    EXPECT_THROW(random_sequence(0, c), std::invalid_argument);
}

TEST(RandomSequence, BaseFrequenciesNearUniform) {
    Rng rng(2024);
    std::array<std::size_t, 4> counts{};
    for (int draw = 0; draw < 10000; ++draw) {
        const RnaSequence seq = random_sequence(60, rng);
        for (Base b : seq.bases()) ++counts[static_cast<int>(b)];
    }
    const double total = 600000.0;
    double chi2 = 0.0;
    for (std::size_t c : counts) {
        const double freq = static_cast<double>(c) / total;
        EXPECT_NEAR(freq, 0.25, 0.02);
        chi2 += (c - total / 4) * (c - total / 4) / (total / 4);
    }
    // 3 degrees of freedom; 16.27 is the 0.999 quantile.
    EXPECT_LT(chi2, 16.27);
}

TEST(RoundTrip, RenderThenParse) {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const RnaSequence seq = random_sequence(1 + rng.below(40), rng);
        EXPECT_EQ(parse_sequence(seq.str()), seq);
    }
}

}  // namespace
}  // namespace stackfold
