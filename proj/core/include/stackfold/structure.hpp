#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stackfold/quartets.hpp"

namespace stackfold {

/// Base pairs over a sequence of `length` positions. Pairs are kept sorted
/// and each position appears in at most one pair.
struct SecondaryStructure {
    std::size_t length = 0;
    std::vector<Pair> pairs;

    /// partner[pos] for 1-based pos; 0 when unpaired. Index 0 is unused.
    std::vector<Position> partners() const;

    friend bool operator==(const SecondaryStructure&, const SecondaryStructure&) = default;
};

/// Union of the pairs of all selected quartets, duplicates merged. Throws
/// InfeasibleError naming the positions when a base gets two partners, and
/// std::invalid_argument when the bitstring length differs from the model.
SecondaryStructure decode(std::span<const std::uint8_t> bits, const QuartetModel& model);

/// '.' for unpaired bases, '()' for the first bracket tier, then '[]' and
/// '{}' for pairs crossing earlier tiers. Pairs are assigned greedily in
/// order of their 5' position. Throws Error when more than three tiers
/// would be needed.
std::string to_dot_bracket(const SecondaryStructure& s);

bool has_pseudoknot(const SecondaryStructure& s);

}  // namespace stackfold
