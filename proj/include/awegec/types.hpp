#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace awegec {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

// Tokens of one sentence plus byte offsets into `text`.
// Invariant: text.substr(offsets[i].start, offsets[i].size()) == tokens[i].
struct TokenizedSentence {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<Span> offsets;

  // Builds a sentence whose text is the space-joined tokens.
  static TokenizedSentence from_tokens(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  std::string joined() const;

  friend bool operator==(const TokenizedSentence&, const TokenizedSentence&) = default;
};

// A contiguous source-span replacement. An empty span is an insertion, an
// empty replacement a deletion.
struct Edit {
  Span span;
  std::vector<std::string> replacement;
  std::string etype;

  friend bool operator==(const Edit&, const Edit&) = default;
};

std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");
std::vector<std::string> split_ws(std::string_view text);

// Checks sorted order, non-overlap, and range. Throws OverlappingEdits or
// SpanOutOfRange.
void validate_edits(const std::vector<Edit>& edits, std::size_t source_length);

// True when `b` (following `a` in sorted order) overlaps `a`. Two insertions
// at the same point overlap.
bool edits_overlap(const Edit& a, const Edit& b) noexcept;

}  // namespace awegec
