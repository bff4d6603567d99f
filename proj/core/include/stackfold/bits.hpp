#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stackfold {

/// Assignment of binary variables; element k is variable/qubit k.
///
/// Text and integer forms put variable 0 first: the string "01" sets
/// variable 1, and as an integer variable 0 is the most significant bit, so
/// numeric order of indices equals lexicographic order of strings.
using Bits = std::vector<std::uint8_t>;

std::string to_string(std::span<const std::uint8_t> bits);
/// Throws ParseError on characters other than '0'/'1'.
Bits bits_from_string(std::string_view text);

Bits bits_from_index(std::uint64_t index, std::size_t n);
std::uint64_t index_from_bits(std::span<const std::uint8_t> bits);

}  // namespace stackfold
