#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stackfold/sequence.hpp"

namespace stackfold {

/// Base pair between 1-based positions i < j.
struct Pair {
    Position i = 0;
    Position j = 0;

    friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Stacked pairs (i, j) and (i+1, j-1); one decision variable.
struct Quartet {
    Position i = 0;
    Position j = 0;

    Pair outer() const { return {i, j}; }
    Pair inner() const { return {i + 1, j - 1}; }

    friend auto operator<=>(const Quartet&, const Quartet&) = default;
};

/// Which pair of a quartet marks a terminal AU/UA end.
enum class QuaMode { outer_pair, inner_pair };

struct ModelOptions {
    /// Unpaired bases required inside the innermost pair.
    int min_loop = 3;
    QuaMode qua_mode = QuaMode::outer_pair;
    /// Restrict UA-end membership to quartets with at least one stacking partner.
    bool qua_stacked_only = false;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Variables and pre-processed relation sets for one sequence.
///
/// Quartet indices are positions in `quartets()` (lexicographic by (i, j)),
/// which is also the qubit order.
class QuartetModel {
public:
    QuartetModel(RnaSequence sequence, ModelOptions options, std::vector<Quartet> quartets,
                 std::vector<IndexPair> conflicts, std::vector<std::vector<std::size_t>> stacks,
                 std::vector<std::size_t> ua_ends);

    const RnaSequence& sequence() const { return sequence_; }
    const ModelOptions& options() const { return options_; }
    std::size_t size() const { return quartets_.size(); }

    const std::vector<Quartet>& quartets() const { return quartets_; }
    /// Unordered conflicting pairs (a < b), sorted.
    const std::vector<IndexPair>& conflicts() const { return conflicts_; }
    /// Sorted stacking partners of each quartet; symmetric.
    const std::vector<std::vector<std::size_t>>& stacks() const { return stacks_; }
    /// Unordered stacking pairs (a < b), sorted.
    std::vector<IndexPair> stack_pairs() const;
    /// Sorted indices of quartets with a UA/AU end pair.
    const std::vector<std::size_t>& ua_ends() const { return ua_ends_; }

private:
    RnaSequence sequence_;
    ModelOptions options_;
    std::vector<Quartet> quartets_;
    std::vector<IndexPair> conflicts_;
    std::vector<std::vector<std::size_t>> stacks_;
    std::vector<std::size_t> ua_ends_;
};

bool is_valid_pair(const RnaSequence& seq, Pair p);

/// All quartets whose outer and inner pairs are valid and whose inner pair
/// encloses at least `min_loop` unpaired bases, sorted by (i, j).
std::vector<Quartet> enumerate_quartets(const RnaSequence& seq, int min_loop);

/// p.i < q.i < p.j < q.j or the mirror case.
constexpr bool pairs_cross(Pair p, Pair q) {
    return (p.i < q.i && q.i < p.j && p.j < q.j) || (q.i < p.i && p.i < q.j && q.j < p.j);
}

/// Distinct pairs sharing a position.
constexpr bool pairs_conflict_on_base(Pair p, Pair q) {
    if (p == q) return false;
    return p.i == q.i || p.i == q.j || p.j == q.i || p.j == q.j;
}

/// One quartet's inner pair is the other's outer pair.
constexpr bool can_stack(Quartet a, Quartet b) {
    return (b.i == a.i + 1 && b.j == a.j - 1) || (a.i == b.i + 1 && a.j == b.j - 1);
}

/// Any constituent pair of `a` crosses, or shares a base with a different
/// partner than, any constituent pair of `b`. A shared identical pair is
/// consistent, so stacked quartets do not conflict.
bool quartets_conflict(Quartet a, Quartet b);

QuartetModel build_model(const RnaSequence& seq, const ModelOptions& options = {});

/// Uniformly random sequence with exactly `count` quartets, found by
/// rejection over lengths whose expected quartet count is within a factor
/// of two of `count`. Throws std::runtime_error after `max_attempts` draws.
RnaSequence random_sequence_with_quartets(std::size_t count, int min_loop, Rng& rng,
                                          std::size_t max_attempts = 1'000'000);

}  // namespace stackfold
