#include "stackfold/energy.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stackfold/errors.hpp"

namespace stackfold {

namespace detail {
extern const std::string_view kDefaultStackTableText;
}

std::size_t StackTable::slot(const StackKey& key) {
    return static_cast<std::size_t>(key.outer_5p) * 64 + static_cast<std::size_t>(key.outer_3p) * 16 +
           static_cast<std::size_t>(key.inner_5p) * 4 + static_cast<std::size_t>(key.inner_3p);
}

StackKey StackTable::key_of(std::size_t slot) {
    return {kAllBases[(slot >> 6) & 3], kAllBases[(slot >> 4) & 3], kAllBases[(slot >> 2) & 3],
            kAllBases[slot & 3]};
}

std::optional<double> StackTable::find(const StackKey& key) const { return entries_[slot(key)]; }

double StackTable::at(const StackKey& key) const {
    if (auto v = find(key)) return *v;
    std::string desc{to_char(key.outer_5p), to_char(key.outer_3p), ' ', to_char(key.inner_5p),
                     to_char(key.inner_3p)};
    throw LookupError("no stacking energy for " + desc);
}

bool StackTable::insert(const StackKey& key, double energy) {
    auto& entry = entries_[slot(key)];
    if (entry) return false;
    entry = energy;
    ++count_;
    return true;
}

namespace {

std::optional<Base> base_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'A': return Base::A;
        case 'C': return Base::C;
        case 'G': return Base::G;
        case 'U':
        case 'T': return Base::U;
        default: return std::nullopt;
    }
}

std::pair<Base, Base> parse_pair_token(const std::string& token, std::size_t line_no) {
    const auto where = " on line " + std::to_string(line_no);
    if (token.size() != 2) throw ParseError("expected a two-base pair, got '" + token + "'" + where);
    auto a = base_from_char(token[0]);
    auto b = base_from_char(token[1]);
    if (!a || !b) throw ParseError("invalid base in '" + token + "'" + where);
    if (!is_valid_pair(*a, *b)) throw ParseError("'" + token + "' is not a valid base pair" + where);
    return {*a, *b};
}

}  // namespace

StackTable load_stack_table(std::istream& in) {
    StackTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;
        if (tokens.size() != 3) {
            throw ParseError("expected '<outer> <inner> <energy>' on line " + std::to_string(line_no));
        }
        const auto outer = parse_pair_token(tokens[0], line_no);
        const auto inner = parse_pair_token(tokens[1], line_no);

        double energy = 0.0;
        const std::string& num = tokens[2];
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), energy);
        if (ec != std::errc{} || ptr != num.data() + num.size()) {
            throw ParseError("malformed energy '" + num + "' on line " + std::to_string(line_no));
        }
        const StackKey key{outer.first, outer.second, inner.first, inner.second};
        if (!table.insert(key, energy)) {
            throw ParseError("duplicate stack " + tokens[0] + " " + tokens[1] + " on line " +
                             std::to_string(line_no));
        }
    }
    return table;
}

StackTable load_stack_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_stack_table(in);
}

StackTable load_stack_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open stack table '" + path + "'");
    return load_stack_table(in);
}

namespace {

StackTable load_default() {
    StackTable table = load_stack_table(detail::kDefaultStackTableText);
    if (table.size() != 36) {
        throw ParseError("default stack table must cover all 36 pair combinations");
    }
    table.for_each([](const StackKey& key, double energy) {
        const bool tandem_gu = (key.outer_5p == Base::G && key.outer_3p == Base::U &&
                                key.inner_5p == Base::U && key.inner_3p == Base::G) ||
                               (key.outer_5p == Base::U && key.outer_3p == Base::G &&
                                key.inner_5p == Base::G && key.inner_3p == Base::U);
        if (!tandem_gu && !(energy < 0.0)) {
            throw ParseError("default stack table has a non-stabilizing entry");
        }
    });
    return table;
}

}  // namespace

const StackTable& default_stack_table() {
    static const StackTable table = load_default();
    return table;
}

StackKey stack_key(const RnaSequence& seq, Quartet q) {
    return {seq.at(q.i), seq.at(q.j), seq.at(q.i + 1), seq.at(q.j - 1)};
}

double quartet_energy(const StackTable& table, const RnaSequence& seq, Quartet q) {
    const StackKey key = stack_key(seq, q);
    if (auto v = table.find(key)) return *v;
    std::string bases{to_char(key.outer_5p), to_char(key.outer_3p), ' ', to_char(key.inner_5p),
                      to_char(key.inner_3p)};
    throw LookupError("no stacking energy for quartet (" + std::to_string(q.i) + "," +
                      std::to_string(q.j) + ") with bases " + bases);
}

}  // namespace stackfold
