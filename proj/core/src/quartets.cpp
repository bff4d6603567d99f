#include "stackfold/quartets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stackfold {

namespace {

bool is_ua(const RnaSequence& seq, Pair p) {
    const Base a = seq.at(p.i);
    const Base b = seq.at(p.j);
    return (a == Base::A && b == Base::U) || (a == Base::U && b == Base::A);
}

}  // namespace

QuartetModel::QuartetModel(RnaSequence sequence, ModelOptions options,
                           std::vector<Quartet> quartets, std::vector<IndexPair> conflicts,
                           std::vector<std::vector<std::size_t>> stacks,
                           std::vector<std::size_t> ua_ends)
    : sequence_(std::move(sequence)),
      options_(options),
      quartets_(std::move(quartets)),
      conflicts_(std::move(conflicts)),
      stacks_(std::move(stacks)),
      ua_ends_(std::move(ua_ends)) {
    if (stacks_.size() != quartets_.size()) {
        throw std::invalid_argument("QuartetModel: stack adjacency size mismatch");
    }
}

std::vector<IndexPair> QuartetModel::stack_pairs() const {
    std::vector<IndexPair> out;
    for (std::size_t a = 0; a < stacks_.size(); ++a) {
        for (std::size_t b : stacks_[a]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

bool is_valid_pair(const RnaSequence& seq, Pair p) {
    if (p.i < 1 || p.j <= p.i || static_cast<std::size_t>(p.j) > seq.size()) return false;
    return is_valid_pair(seq.at(p.i), seq.at(p.j));
}

std::vector<Quartet> enumerate_quartets(const RnaSequence& seq, int min_loop) {
    if (min_loop < 0) throw std::invalid_argument("min_loop must be nonnegative");
    std::vector<Quartet> out;
    const auto n = static_cast<Position>(seq.size());
    for (Position i = 1; i <= n; ++i) {
        // Inner pair (i+1, j-1) must enclose min_loop bases: j - i >= min_loop + 3.
        for (Position j = i + min_loop + 3; j <= n; ++j) {
            const Quartet q{i, j};
            if (is_valid_pair(seq, q.outer()) && is_valid_pair(seq, q.inner())) out.push_back(q);
        }
    }
    return out;
}

bool quartets_conflict(Quartet a, Quartet b) {
    const Pair pa[2] = {a.outer(), a.inner()};
    const Pair pb[2] = {b.outer(), b.inner()};
    for (const Pair& p : pa) {
        for (const Pair& q : pb) {
            if (pairs_cross(p, q) || pairs_conflict_on_base(p, q)) return true;
        }
    }
    return false;
}

QuartetModel build_model(const RnaSequence& seq, const ModelOptions& options) {
    std::vector<Quartet> quartets = enumerate_quartets(seq, options.min_loop);
    const std::size_t n = quartets.size();

    std::vector<IndexPair> conflicts;
    std::vector<std::vector<std::size_t>> stacks(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (can_stack(quartets[a], quartets[b])) {
                stacks[a].push_back(b);
                stacks[b].push_back(a);
            } else if (quartets_conflict(quartets[a], quartets[b])) {
                conflicts.emplace_back(a, b);
            }
        }
    }
    for (auto& s : stacks) std::sort(s.begin(), s.end());

    std::vector<std::size_t> ua_ends;
    for (std::size_t a = 0; a < n; ++a) {
        const Pair end = options.qua_mode == QuaMode::outer_pair ? quartets[a].outer()
                                                                 : quartets[a].inner();
        if (!is_ua(seq, end)) continue;
        if (options.qua_stacked_only && stacks[a].empty()) continue;
        ua_ends.push_back(a);
    }

    return QuartetModel(seq, options, std::move(quartets), std::move(conflicts), std::move(stacks),
                        std::move(ua_ends));
}

RnaSequence random_sequence_with_quartets(std::size_t count, int min_loop, Rng& rng,
                                          std::size_t max_attempts) {
    // A given (i, j) is a quartet with probability (6/16)^2.
    const auto expected = [min_loop](std::size_t length) {
        double slots = 0;
        for (std::size_t d = static_cast<std::size_t>(min_loop) + 3; d < length; ++d)
            slots += static_cast<double>(length - d);
        return slots * 0.140625;
    };
    const std::size_t shortest = static_cast<std::size_t>(std::max(min_loop, 0)) + 4;
    std::size_t lo = shortest;
    while (expected(lo) < 0.5 * static_cast<double>(count)) ++lo;
    std::size_t hi = lo;
    while (expected(hi + 1) <= 2.0 * static_cast<double>(count) + 1.0) ++hi;

    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const std::size_t length = lo + rng.below(hi - lo + 1);
        RnaSequence seq = random_sequence(length, rng);
        if (enumerate_quartets(seq, min_loop).size() == count) return seq;
    }
    throw std::runtime_error("no random sequence with " + std::to_string(count) +
                             " quartets after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace stackfold
