#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "stackfold/quartets.hpp"
#include "stackfold/sequence.hpp"

namespace stackfold {

/// Bases of a stack: outer pair (i, j) over inner pair (i+1, j-1).
struct StackKey {
    Base outer_5p;  // base i
    Base outer_3p;  // base j
    Base inner_5p;  // base i+1
    Base inner_3p;  // base j-1

    friend bool operator==(const StackKey&, const StackKey&) = default;
};

/// Nearest-neighbor stacking free energies in kcal/mol.
class StackTable {
public:
    /// Throws LookupError when the key is absent.
    double at(const StackKey& key) const;
    std::optional<double> find(const StackKey& key) const;
    bool contains(const StackKey& key) const { return find(key).has_value(); }

    /// Returns false if the key was already present.
    bool insert(const StackKey& key, double energy);
    std::size_t size() const { return count_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            if (entries_[k]) fn(key_of(k), *entries_[k]);
        }
    }

private:
    static std::size_t slot(const StackKey& key);
    static StackKey key_of(std::size_t slot);

    std::array<std::optional<double>, 256> entries_{};
    std::size_t count_ = 0;
};

/// Reads `<outer> <inner> <energy>` records, e.g. `CG GC -2.36`. '#' starts
/// a comment; blank lines are skipped. Throws ParseError with the line
/// number on malformed records, invalid bases, non-pairing keys, or
/// duplicate keys.
StackTable load_stack_table(std::istream& in);
StackTable load_stack_table(std::string_view text);
StackTable load_stack_table_file(const std::string& path);

/// The shipped Turner 2004 table (compiled in). Validates on first use that
/// all 36 pair combinations are present and that every stack is stabilizing
/// except the two tandem G-U stacks.
const StackTable& default_stack_table();

StackKey stack_key(const RnaSequence& seq, Quartet q);

/// Bare stacking energy e_q of a quartet. Throws LookupError naming the
/// quartet and its bases when the table has no entry.
double quartet_energy(const StackTable& table, const RnaSequence& seq, Quartet q);

/// Coefficients of the folding objective.
struct ObjectiveWeights {
    /// Reward per stacked quartet pair (negative favours stacking).
    double reward = -1.0;
    /// Penalty tied to UA/AU end pairs.
    double ua_penalty = 0.5;
    /// Constraint penalty; empty means derive it from the program.
    std::optional<double> constraint_penalty;
};

}  // namespace stackfold
