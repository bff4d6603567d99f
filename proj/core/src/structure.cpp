#include "stackfold/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "stackfold/errors.hpp"

namespace stackfold {

std::vector<Position> SecondaryStructure::partners() const {
    std::vector<Position> partner(length + 1, 0);
    for (const Pair& p : pairs) {
        partner[static_cast<std::size_t>(p.i)] = p.j;
        partner[static_cast<std::size_t>(p.j)] = p.i;
    }
    return partner;
}

SecondaryStructure decode(std::span<const std::uint8_t> bits, const QuartetModel& model) {
    if (bits.size() != model.size()) {
        throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                    " != " + std::to_string(model.size()) + " quartets");
    }
    SecondaryStructure s;
    s.length = model.sequence().size();
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (!bits[k]) continue;
        s.pairs.push_back(model.quartets()[k].outer());
        s.pairs.push_back(model.quartets()[k].inner());
    }
    std::sort(s.pairs.begin(), s.pairs.end());
    s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());

    std::vector<Position> partner(s.length + 1, 0);
    for (const Pair& p : s.pairs) {
        for (auto [here, there] : {std::pair{p.i, p.j}, std::pair{p.j, p.i}}) {
            Position& slot = partner[static_cast<std::size_t>(here)];
            if (slot != 0 && slot != there) {
                throw InfeasibleError("position " + std::to_string(here) + " pairs with both " +
                                      std::to_string(slot) + " and " + std::to_string(there));
            }
            slot = there;
        }
    }
    return s;
}

std::string to_dot_bracket(const SecondaryStructure& s) {
    static constexpr char kOpen[] = {'(', '[', '{'};
    static constexpr char kClose[] = {')', ']', '}'};

    std::vector<Pair> ordered = s.pairs;
    std::sort(ordered.begin(), ordered.end());
    std::vector<std::vector<Pair>> tiers;
    std::string out(s.length, '.');
    for (const Pair& p : ordered) {
        std::size_t tier = 0;
        while (tier < tiers.size() &&
               std::any_of(tiers[tier].begin(), tiers[tier].end(),
                           [&](const Pair& q) { return pairs_cross(p, q); })) {
            ++tier;
        }
        if (tier == std::size(kOpen)) {
            throw Error("structure needs more than three bracket tiers");
        }
        if (tier == tiers.size()) tiers.emplace_back();
        tiers[tier].push_back(p);
        out[static_cast<std::size_t>(p.i - 1)] = kOpen[tier];
        out[static_cast<std::size_t>(p.j - 1)] = kClose[tier];
    }
    return out;
}

bool has_pseudoknot(const SecondaryStructure& s) {
    for (std::size_t a = 0; a < s.pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < s.pairs.size(); ++b) {
            if (pairs_cross(s.pairs[a], s.pairs[b])) return true;
        }
    }
    return false;
}

}  // namespace stackfold
