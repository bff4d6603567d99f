#include "stackfold/sequence.hpp"

#include <cctype>
#include <stdexcept>

#include "stackfold/errors.hpp"

namespace stackfold {

char to_char(Base b) {
    switch (b) {
        case Base::A: return 'A';
        case Base::C: return 'C';
        case Base::G: return 'G';
        case Base::U: return 'U';
    }
    return '?';
}

Base RnaSequence::at(Position pos) const {
    if (pos < 1 || static_cast<std::size_t>(pos) > bases_.size()) {
        throw std::out_of_range("sequence position " + std::to_string(pos) + " outside 1.." +
                                std::to_string(bases_.size()));
    }
    return bases_[static_cast<std::size_t>(pos - 1)];
}

std::string RnaSequence::str() const {
    std::string out;
    out.reserve(bases_.size());
    for (Base b : bases_) out.push_back(to_char(b));
    return out;
}

RnaSequence parse_sequence(std::string_view text) {
    std::vector<Base> bases;
    bases.reserve(text.size());
    std::size_t position = 0;
    for (char raw : text) {
        if (std::isspace(static_cast<unsigned char>(raw))) continue;
        ++position;
        switch (std::toupper(static_cast<unsigned char>(raw))) {
            case 'A': bases.push_back(Base::A); break;
            case 'C': bases.push_back(Base::C); break;
            case 'G': bases.push_back(Base::G); break;
            case 'U':
            case 'T': bases.push_back(Base::U); break;
            default:
                throw ParseError("invalid base '" + std::string(1, raw) + "' at position " +
                                 std::to_string(position));
        }
    }
    if (bases.empty()) throw ParseError("empty sequence");
    return RnaSequence(std::move(bases));
}

RnaSequence parse_fasta(std::string_view text) {
    std::string body;
    bool seen_record = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.front() == '>') {
            if (seen_record && !body.empty()) break;
            seen_record = true;
        } else {
            body.append(line);
        }
        start = end + 1;
    }
    return parse_sequence(body);
}

RnaSequence random_sequence(std::size_t length, Rng& rng) {
    if (length == 0) throw std::invalid_argument("random_sequence: length must be positive");
    std::vector<Base> bases(length);
    for (auto& b : bases) b = kAllBases[rng.below(4)];
    return RnaSequence(std::move(bases));
}

}  // namespace stackfold
