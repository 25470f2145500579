#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Small UTF-8 and character-class helpers shared across modules.
namespace awegec::text {

std::size_t codepoint_count(std::string_view s) noexcept;
std::string ascii_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;

// True when every code point of `s` is punctuation (ASCII punctuation or a
// small set of typographic marks). Empty strings are not punctuation.
bool is_punct_token(std::string_view s) noexcept;
bool is_number_token(std::string_view s) noexcept;
// "@" followed by uppercase letters and optional digits, e.g. @PERSON1.
bool is_placeholder(std::string_view s) noexcept;

// Byte length of the punctuation character starting at s[pos], or 0.
std::size_t punct_length_at(std::string_view s, std::size_t pos) noexcept;
// Byte length of the punctuation character ending at s[end-1], or 0.
std::size_t punct_length_before(std::string_view s, std::size_t end) noexcept;

// Optimal string alignment distance over code points (Levenshtein plus
// adjacent transposition), with early exit: returns
// `limit + 1` as soon as the distance is known to exceed `limit`.
std::size_t edit_distance(std::string_view a, std::string_view b, std::size_t limit);

std::string trim(std::string_view s);

}  // namespace awegec::text
