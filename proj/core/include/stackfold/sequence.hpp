#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stackfold/rng.hpp"

namespace stackfold {

enum class Base : std::uint8_t { A, C, G, U };

inline constexpr Base kAllBases[] = {Base::A, Base::C, Base::G, Base::U};

char to_char(Base b);

/// 1-based sequence position.
using Position = int;

/// Validated RNA sequence. Positions are 1-based at the interface; the
/// 0-based storage never leaks.
class RnaSequence {
public:
    RnaSequence() = default;
    explicit RnaSequence(std::vector<Base> bases) : bases_(std::move(bases)) {}

    std::size_t size() const { return bases_.size(); }
    bool empty() const { return bases_.empty(); }

    /// Base at 1-based position `pos`; throws std::out_of_range.
    Base at(Position pos) const;

    const std::vector<Base>& bases() const { return bases_; }
    std::string str() const;

    friend bool operator==(const RnaSequence&, const RnaSequence&) = default;

private:
    std::vector<Base> bases_;
};

/// Parses a raw base string. Whitespace is ignored, case is folded, and
/// T is read as U. Throws ParseError naming the 1-based position of the
/// first invalid symbol.
RnaSequence parse_sequence(std::string_view text);

/// Parses plain or FASTA-style text: lines starting with '>' are skipped
/// and the rest are concatenated. Only the first record is read.
RnaSequence parse_fasta(std::string_view text);

/// True for the six canonical and wobble pairs AU, UA, CG, GC, GU, UG.
constexpr bool is_valid_pair(Base a, Base b) {
    switch (a) {
        case Base::A: return b == Base::U;
        case Base::C: return b == Base::G;
        case Base::G: return b == Base::C || b == Base::U;
        case Base::U: return b == Base::A || b == Base::G;
    }
    return false;
}

/// Uniform i.i.d. bases; deterministic for a given stream state.
RnaSequence random_sequence(std::size_t length, Rng& rng);

}  // namespace stackfold
