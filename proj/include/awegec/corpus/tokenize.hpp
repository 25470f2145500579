#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "awegec/types.hpp"

namespace awegec::corpus {

// Whitespace split, then leading/trailing punctuation peeled off as separate
// tokens, then contraction suffixes split by a fixed table
// (n't 's 're 've 'll 'd 'm, ASCII or typographic apostrophe).
// A leading '@' is kept so that placeholders like @PERSON1 stay whole.
TokenizedSentence tokenize(std::string_view text);

// Contraction suffixes in match order.
const std::vector<std::string>& contraction_suffixes();

struct SplitterConfig {
  std::vector<std::string> abbreviations = {
      "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "Sr.", "Jr.", "St.", "Mt.",
      "vs.", "e.g.", "i.e.", "cf.", "Fig.", "No.", "Inc.", "Co.", "Ltd."};
};

// Byte ranges of each sentence, whitespace between sentences excluded.
// A boundary is terminal punctuation (. ! ?), optionally followed by closing
// quotes or brackets, then whitespace, then an uppercase letter (an opening
// quote or bracket may precede it). A blank line is always a boundary.
std::vector<Span> split_sentence_spans(std::string_view text, const SplitterConfig& config = {});
std::vector<std::string> split_sentences(std::string_view text, const SplitterConfig& config = {});

}  // namespace awegec::corpus
