#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stackfold/errors.hpp"
#include "stackfold/structure.hpp"

namespace stackfold {
namespace {

TEST(Decode, HairpinStack) {
    const QuartetModel m = build_model(parse_sequence("GGGAAACCC"));
    // Quartets (1,8) (1,9) (2,8) (2,9); select (1,9) and (2,8).
    const SecondaryStructure s = decode(bits_from_string("0110"), m);
    EXPECT_EQ(s.pairs, (std::vector<Pair>{{1, 9}, {2, 8}, {3, 7}}));
    EXPECT_EQ(to_dot_bracket(s), "(((...)))");
}

TEST(Decode, NothingSelected) {
    const QuartetModel m = build_model(parse_sequence("GGGAAACCC"));
    const SecondaryStructure s = decode(bits_from_string("0000"), m);
    EXPECT_TRUE(s.pairs.empty());
    EXPECT_EQ(to_dot_bracket(s), ".........");
}

TEST(Decode, BaseSharingIsInfeasible) {
    const QuartetModel m = build_model(parse_sequence("GGGAAACCC"));
    // (1,8) and (1,9) both pair position 1.
    try {
        decode(bits_from_string("1100"), m);
        FAIL();
    } catch (const InfeasibleError& e) {
        EXPECT_NE(std::string(e.what()).find("position 1"), std::string::npos) << e.what();
    }
    EXPECT_THROW(decode(bits_from_string("01"), m), std::invalid_argument);
}

TEST(DotBracket, CrossingUsesSecondTier) {
    SecondaryStructure s{10, {{1, 5}, {3, 8}}};
    EXPECT_EQ(to_dot_bracket(s), "(.[.)..]..");
    EXPECT_TRUE(has_pseudoknot(s));
}

TEST(DotBracket, EmptyAndTiers) {
    EXPECT_EQ(to_dot_bracket(SecondaryStructure{4, {}}), "....");
    // Three mutually crossing pairs fill three tiers; four do not fit.
    SecondaryStructure three{8, {{1, 4}, {2, 6}, {3, 8}}};
    EXPECT_EQ(to_dot_bracket(three), "([{).].}");
    SecondaryStructure four{8, {{1, 5}, {2, 6}, {3, 7}, {4, 8}}};
    EXPECT_THROW(to_dot_bracket(four), Error);
}

TEST(HasPseudoknot, Cases) {
    EXPECT_FALSE(has_pseudoknot(SecondaryStructure{9, {{1, 9}, {2, 8}}}));
    EXPECT_TRUE(has_pseudoknot(SecondaryStructure{9, {{1, 5}, {3, 8}}}));
    EXPECT_FALSE(has_pseudoknot(SecondaryStructure{9, {}}));
}

TEST(Decode, FeasibleBitstringsAlwaysDecode) {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const QuartetModel m = build_model(random_sequence(20 + rng.below(10), rng));
        if (m.size() == 0 || m.size() > 16) continue;
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << m.size()); ++idx) {
            const Bits x = bits_from_index(idx, m.size());
            bool feasible = true;
            for (auto [a, b] : m.conflicts()) feasible = feasible && !(x[a] && x[b]);
            if (!feasible) continue;
            const SecondaryStructure s = decode(x, m);
            // Conflict-free selections never cross, so one tier suffices and
            // the rendering parses back to the same pairs.
            EXPECT_FALSE(has_pseudoknot(s));
            const std::string db = to_dot_bracket(s);
            EXPECT_EQ(db.find_first_of("[]{}"), std::string::npos);
            ASSERT_EQ(oracle::parse_dot_bracket(db), s.pairs);
        }
    }
}

TEST(DotBracket, BracketsBalancePerTier) {
    Rng rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        // Random partial matchings on 16 positions, kept when they render.
        SecondaryStructure s{16, {}};
        std::vector<int> free_pos;
        for (int k = 1; k <= 16; ++k) free_pos.push_back(k);
        for (int k = 0; k < 4 && free_pos.size() >= 2; ++k) {
            const auto a = rng.below(free_pos.size());
            const int i = free_pos[a];
            free_pos.erase(free_pos.begin() + static_cast<std::ptrdiff_t>(a));
            const auto b = rng.below(free_pos.size());
            const int j = free_pos[b];
            free_pos.erase(free_pos.begin() + static_cast<std::ptrdiff_t>(b));
            s.pairs.push_back({std::min(i, j), std::max(i, j)});
        }
        std::sort(s.pairs.begin(), s.pairs.end());
        std::string db;
        try {
            db = to_dot_bracket(s);
        } catch (const Error&) {
            continue;
        }
        EXPECT_EQ(oracle::parse_dot_bracket(db), s.pairs) << db;
    }
}

}  // namespace
}  // namespace stackfold
